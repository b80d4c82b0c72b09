#ifndef SATPATH_NASH_SOLVER_H_
#define SATPATH_NASH_SOLVER_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "satpath/game.h"

namespace satpath {

// For each player, a nonempty ascending list of action indices.
struct SupportProfile {
  std::vector<std::vector<int>> supports;

  int TotalSize() const;
  // Throws InvalidInput if a support is empty, unsorted, has duplicates, or
  // names an action outside the game.
  void Validate(const Game& game) const;
};

struct SolverConfig {
  // Max deviation gap accepted for a returned equilibrium.
  double tolerance = 1e-9;
  // Per-player cap on support size; 0 means unlimited.
  int max_support_size = 0;
  // Indifference residual accepted from the support system solve.
  double residual_tolerance = 1e-8;
  // Supports are always enumerated in a fixed order; the flag is kept so a
  // parallel enumerator can opt out of the ordered merge.
  bool deterministic_order = true;
  // Iteration cap for the damped Newton solve used when n >= 3.
  int max_newton_iterations = 200;

  void Validate() const;
};

// Support enumeration ran out without a verified equilibrium. Signals
// numerical degeneracy, not nonexistence.
class SolverIncomplete : public std::runtime_error {
 public:
  SolverIncomplete(const std::string& what, StrategyProfile best,
                   double best_gap)
      : std::runtime_error(what),
        best_candidate_(std::move(best)),
        best_gap_(best_gap) {}
  // Candidate with the smallest max deviation gap seen during the search.
  const StrategyProfile& best_candidate() const { return best_candidate_; }
  double best_gap() const { return best_gap_; }

 private:
  StrategyProfile best_candidate_;
  double best_gap_;
};

// Looks for an equilibrium whose supports are exactly `support` (zero weight
// elsewhere). Returns nothing when the indifference system has no acceptable
// solution or the solution fails the deviation check.
std::optional<StrategyProfile> SolveOnSupport(const Game& game,
                                              const SupportProfile& support,
                                              const SolverConfig& config = {});

// First verified equilibrium in the order: increasing total support size,
// then lexicographic over (player 0's support, player 1's support, ...).
// Throws SolverIncomplete if every support fails.
StrategyProfile FindNash(const Game& game, const SolverConfig& config = {});

// Freezes the players in `frozen` at the given strategies, solves the game
// induced on the remaining players, and reinserts the frozen strategies
// verbatim.
StrategyProfile FindSubgameNash(const Game& game,
                                const std::map<int, MixedStrategy>& frozen,
                                const SolverConfig& config = {});

// Game among the players not in `frozen`, with payoffs averaged over the
// frozen players' strategies. Free players keep their relative order.
Game ReduceGame(const Game& game, const std::map<int, MixedStrategy>& frozen);

// true iff max_i F^i(profile) <= epsilon.
bool VerifyNash(const Game& game, const StrategyProfile& profile,
                double epsilon);

}  // namespace satpath

#endif  // SATPATH_NASH_SOLVER_H_
