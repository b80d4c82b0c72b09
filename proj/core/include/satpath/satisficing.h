#ifndef SATPATH_SATISFICING_H_
#define SATPATH_SATISFICING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "satpath/game.h"
#include "satpath/nash_solver.h"

namespace satpath {

enum class StepKind { kInitial, kWorseStep, kCase1Jump, kCase2Jump };

const char* StepKindName(StepKind kind);
// Throws InvalidInput on an unknown name.
StepKind StepKindFromName(const std::string& name);

struct PathStep {
  StrategyProfile profile;
  StepKind kind = StepKind::kInitial;
  SatisfactionReport report;
};

// A satisficing path: whenever a player best responds (gap <= epsilon) at
// step t, its strategy at step t+1 is bitwise identical.
struct SatisficingPath {
  std::vector<PathStep> steps;
  double epsilon = kDefaultSatisfactionTolerance;
  double terminal_gap = 0.0;
  // Number of times the Worse search budget was escalated after a failed
  // Case-2 verification.
  int escalations = 0;

  int length() const { return static_cast<int>(steps.size()); }
  std::vector<StrategyProfile> Profiles() const;
};

struct WorseSearchConfig {
  int budget = 5000;
  std::vector<double> xi_grid = {0.5, 0.1, 0.01};
  std::uint64_t rng_seed = 0;
  bool include_pure_candidates = true;

  void Validate() const;
};

// Phase-1 search kept failing Case-2 verification after all escalations.
// Carries the satisficing path built so far.
class WorseSearchIncomplete : public std::runtime_error {
 public:
  WorseSearchIncomplete(const std::string& what, SatisficingPath partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SatisficingPath& partial_path() const { return partial_; }

 private:
  SatisficingPath partial_;
};

// y in Access(x): every player satisfied at x keeps its strategy bitwise.
bool IsAccessible(const StrategyProfile& x, const StrategyProfile& y,
                  const SatisfactionReport& report_x);

// y in NoB(x): accessible, and every player unsatisfied at x is still
// unsatisfied at y.
bool InNoB(const Game& game, const StrategyProfile& x,
           const StrategyProfile& y, double epsilon);

// y in Worse(x): in NoB(x), and some player satisfied at x is unsatisfied
// at y.
bool InWorse(const Game& game, const StrategyProfile& x,
             const StrategyProfile& y, double epsilon);

// Searches Access(x) for a member of Worse(x), in order: single-player pure
// deviations of unsatisfied players, then w_xi mixtures for each xi in the
// grid, then joint Dirichlet(1,...,1) resamples of all unsatisfied players.
// Stops at the first hit or after `budget` candidates. Returns nothing when
// nobody is satisfied at x.
std::optional<StrategyProfile> FindWorseCandidate(
    const Game& game, const StrategyProfile& x, double epsilon,
    const WorseSearchConfig& config);

// Builds a satisficing path from x1 to an epsilon-Nash equilibrium:
// Worse-steps while some player is satisfied and a Worse candidate is found,
// then either a jump to an equilibrium (nobody satisfied) or a jump to an
// equilibrium of the subgame among unsatisfied players. A subgame jump that
// fails verification means the Worse search missed a candidate: the budget
// is multiplied by 10 and the search resumes, up to 3 times, after which
// WorseSearchIncomplete is thrown. SolverIncomplete propagates.
SatisficingPath ConstructPath(const Game& game, const StrategyProfile& x1,
                              double epsilon = kDefaultSatisfactionTolerance,
                              const WorseSearchConfig& worse_config = {},
                              const SolverConfig& solver_config = {});

struct PathViolation {
  enum class Kind { kSatisfiedPlayerMoved, kTerminalNotNash, kTooLong };
  Kind kind;
  int step = 0;     // 1-based index t of the offending transition or profile
  int player = -1;  // offending player, when applicable
  std::string message;
};

struct PathVerification {
  bool ok = true;
  std::optional<PathViolation> violation;
};

// Checks the pairwise satisfaction constraint for every t and player, and
// optionally that the last profile is epsilon-Nash and that T <= n + 1.
// Reports the first violation found.
PathVerification VerifyPath(const Game& game,
                            std::span<const StrategyProfile> path,
                            double epsilon, bool require_terminal_nash,
                            bool require_length_bound);

}  // namespace satpath

#endif  // SATPATH_SATISFICING_H_
