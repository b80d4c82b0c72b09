#ifndef SATPATH_ERRORS_H_
#define SATPATH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace satpath {

// Malformed arguments: shape mismatches, out-of-range indices, non-finite
// payoffs, tolerances outside their domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A game or trace document could not be parsed. `key()` names the offending
// JSON key (e.g. "payoffs[0]") or CSV line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Raised when a result that must hold mathematically fails a runtime check
// (e.g. a constructed path fails its own verification).
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A file could not be opened, read, or written. The message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace satpath

#endif  // SATPATH_ERRORS_H_
