#ifndef SATPATH_TRACE_IO_H_
#define SATPATH_TRACE_IO_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "satpath/dynamics.h"
#include "satpath/game.h"
#include "satpath/satisficing.h"

namespace satpath {

enum class OutputFormat { kCsv, kJson };

// "csv" or "json"; throws InvalidInput otherwise.
OutputFormat OutputFormatFromName(const std::string& name);

// CSV traces have one row per (step, player, action):
//
//   step,step_kind,player,action,probability,gap,satisfied
//
// `step` is 1-based, `player` and `action` are 0-based, `gap` is the player's
// deviation gap at that step and `satisfied` is 1 or 0. Trajectory steps after
// the first use the kind "update". Floats use 17 significant digits.
void WritePath(const SatisficingPath& path, OutputFormat format,
               std::ostream& out);
void WriteTrajectory(const Trajectory& trajectory, OutputFormat format,
                     std::ostream& out);

// Writes to a file, or to stdout when `destination` is "-". Throws
// InvalidInput for empty sequences and IoError (naming the destination) on
// I/O failure.
void EmitPath(const SatisficingPath& path, OutputFormat format,
              const std::string& destination);
void EmitTrajectory(const Trajectory& trajectory, OutputFormat format,
                    const std::string& destination);

// A trace read back from either format.
struct TraceDocument {
  std::vector<StrategyProfile> profiles;
  std::vector<std::string> step_kinds;
  std::vector<std::vector<double>> gaps;
  std::optional<double> epsilon;  // JSON traces only
};

// Detects the format from the first non-blank character ('{' means JSON).
// Throws ParseError on malformed input.
TraceDocument ParseTrace(const std::string& text);
TraceDocument LoadTrace(const std::string& path);

// Equilibrium output of the `solve` command.
void WriteProfile(const StrategyProfile& profile, double max_gap,
                  OutputFormat format, std::ostream& out);

void WriteBatch(const std::vector<BatchRow>& rows, OutputFormat format,
                std::ostream& out);

}  // namespace satpath

#endif  // SATPATH_TRACE_IO_H_
