#ifndef SATPATH_DYNAMICS_H_
#define SATPATH_DYNAMICS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "satpath/game.h"
#include "satpath/random.h"

namespace satpath {

// Win-stay, lose-shift dynamics: satisfied players keep their strategies,
// unsatisfied players draw a new one from an explorer.

// Satisfaction tolerance used by the dynamics unless overridden. Looser than
// the path constructor's because continuous resampling never lands exactly on
// a mixed equilibrium.
inline constexpr double kDefaultDynamicsTolerance = 1e-6;

struct ExplorerPolicy {
  enum class Kind { kDirichletUniform, kPureUniform, kMixtureWithCurrent };
  Kind kind = Kind::kDirichletUniform;
  // Weight on the fresh Dirichlet draw; only used by kMixtureWithCurrent.
  double mixture_weight = 0.5;

  void Validate() const;
  // Draws a new strategy for a player currently playing `current`.
  MixedStrategy Explore(const MixedStrategy& current, Rng& rng) const;
};

const char* ExplorerKindName(ExplorerPolicy::Kind kind);
// Throws InvalidInput on an unknown name.
ExplorerPolicy::Kind ExplorerKindFromName(const std::string& name);

struct Trajectory {
  std::vector<StrategyProfile> profiles;
  std::vector<SatisfactionReport> reports;
  // 1-based index of the first epsilon-Nash profile, if one was reached.
  std::optional<int> hit_step;
  std::uint64_t seed = 0;
  double epsilon = kDefaultDynamicsTolerance;

  int length() const { return static_cast<int>(profiles.size()); }
};

StrategyProfile SatisficingStep(const Game& game,
                                const StrategyProfile& profile,
                                double epsilon, const ExplorerPolicy& explorer,
                                Rng& rng);

// Applies SatisficingStep up to `max_steps` times starting from x1. Stops at
// the first epsilon-Nash profile, which is absorbing.
Trajectory RunDynamics(const Game& game, const StrategyProfile& x1,
                       double epsilon, int max_steps,
                       const ExplorerPolicy& explorer, std::uint64_t seed);

struct BatchRow {
  int game_index = 0;
  std::string game_name;
  int trials = 0;
  int hits = 0;
  double hit_frequency = 0.0;
  // Hitting time counts updates: a trial starting at equilibrium has 0.
  // Both are NaN when no trial hit.
  double mean_hitting_time = 0.0;
  double median_hitting_time = 0.0;
};

// Runs `trials_per_game` trajectories per game. Trial i of game g uses
// seed DeriveSeed(master_seed, g, i) and starts from a profile drawn with
// that seed: random vertices for the pure_uniform explorer, Dirichlet draws
// otherwise.
std::vector<BatchRow> BatchExperiment(const std::vector<Game>& games,
                                      int trials_per_game, double epsilon,
                                      const ExplorerPolicy& explorer,
                                      int max_steps, std::uint64_t master_seed);

// Initial profile used by BatchExperiment for a given trial seed.
StrategyProfile SampleInitialProfile(const Game& game,
                                     const ExplorerPolicy& explorer,
                                     Rng& rng);

}  // namespace satpath

#endif  // SATPATH_DYNAMICS_H_
