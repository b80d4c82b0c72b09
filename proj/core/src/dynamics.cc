#include "satpath/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "satpath/errors.h"

namespace satpath {

void ExplorerPolicy::Validate() const {
  if (!(mixture_weight >= 0.0 && mixture_weight <= 1.0)) {
    throw InvalidInput("explorer mixture weight must lie in [0, 1]");
  }
}

MixedStrategy ExplorerPolicy::Explore(const MixedStrategy& current,
                                      Rng& rng) const {
  const int m = current.num_actions();
  switch (kind) {
    case Kind::kDirichletUniform:
      return SampleDirichletUniform(rng, m);
    case Kind::kPureUniform:
      return SamplePureUniform(rng, m);
    case Kind::kMixtureWithCurrent: {
      const MixedStrategy draw = SampleDirichletUniform(rng, m);
      std::vector<double> probs(m);
      for (int a = 0; a < m; ++a) {
        probs[a] = (1.0 - mixture_weight) * current[a] +
                   mixture_weight * draw[a];
      }
      return MixedStrategy(std::move(probs));
    }
  }
  throw InvalidInput("unknown explorer kind");
}

const char* ExplorerKindName(ExplorerPolicy::Kind kind) {
  switch (kind) {
    case ExplorerPolicy::Kind::kDirichletUniform:
      return "dirichlet_uniform";
    case ExplorerPolicy::Kind::kPureUniform:
      return "pure_uniform";
    case ExplorerPolicy::Kind::kMixtureWithCurrent:
      return "mixture_with_current";
  }
  return "unknown";
}

ExplorerPolicy::Kind ExplorerKindFromName(const std::string& name) {
  for (auto k : {ExplorerPolicy::Kind::kDirichletUniform,
                 ExplorerPolicy::Kind::kPureUniform,
                 ExplorerPolicy::Kind::kMixtureWithCurrent}) {
    if (name == ExplorerKindName(k)) return k;
  }
  throw InvalidInput("unknown explorer '" + name + "'");
}

StrategyProfile SatisficingStep(const Game& game,
                                const StrategyProfile& profile,
                                double epsilon, const ExplorerPolicy& explorer,
                                Rng& rng) {
  explorer.Validate();
  const SatisfactionReport report = ComputeSatisfaction(game, profile, epsilon);
  std::vector<MixedStrategy> next = profile.strategies();
  for (int i : report.unsatisfied) next[i] = explorer.Explore(profile[i], rng);
  return StrategyProfile(std::move(next));
}

Trajectory RunDynamics(const Game& game, const StrategyProfile& x1,
                       double epsilon, int max_steps,
                       const ExplorerPolicy& explorer, std::uint64_t seed) {
  if (max_steps < 1) throw InvalidInput("max_steps must be >= 1");
  explorer.Validate();
  Trajectory traj;
  traj.seed = seed;
  traj.epsilon = epsilon;
  Rng rng(seed);

  traj.profiles.push_back(x1);
  traj.reports.push_back(ComputeSatisfaction(game, x1, epsilon));
  for (int step = 0;; ++step) {
    const SatisfactionReport& report = traj.reports.back();
    if (report.AllSatisfied()) {
      traj.hit_step = traj.length();
      break;
    }
    if (step == max_steps) break;
    const StrategyProfile& current = traj.profiles.back();
    std::vector<MixedStrategy> next = current.strategies();
    for (int i : report.unsatisfied) {
      next[i] = explorer.Explore(current[i], rng);
    }
    StrategyProfile profile(std::move(next));
    SatisfactionReport next_report = ComputeSatisfaction(game, profile, epsilon);
    traj.profiles.push_back(std::move(profile));
    traj.reports.push_back(std::move(next_report));
  }
  return traj;
}

StrategyProfile SampleInitialProfile(const Game& game,
                                     const ExplorerPolicy& explorer,
                                     Rng& rng) {
  std::vector<MixedStrategy> s;
  for (int i = 0; i < game.num_players(); ++i) {
    s.push_back(explorer.kind == ExplorerPolicy::Kind::kPureUniform
                    ? SamplePureUniform(rng, game.num_actions(i))
                    : SampleDirichletUniform(rng, game.num_actions(i)));
  }
  return StrategyProfile(std::move(s));
}

std::vector<BatchRow> BatchExperiment(const std::vector<Game>& games,
                                      int trials_per_game, double epsilon,
                                      const ExplorerPolicy& explorer,
                                      int max_steps,
                                      std::uint64_t master_seed) {
  if (trials_per_game < 1) throw InvalidInput("trials must be >= 1");
  if (max_steps < 1) throw InvalidInput("max_steps must be >= 1");
  explorer.Validate();
  std::vector<BatchRow> rows;
  for (std::size_t g = 0; g < games.size(); ++g) {
    BatchRow row;
    row.game_index = static_cast<int>(g);
    row.game_name = games[g].name();
    row.trials = trials_per_game;
    std::vector<double> times;
    for (int t = 0; t < trials_per_game; ++t) {
      const std::uint64_t seed =
          DeriveSeed(master_seed, g, static_cast<std::uint64_t>(t));
      Rng init_rng(DeriveSeed(seed, 0x1417));
      const StrategyProfile x1 = SampleInitialProfile(games[g], explorer, init_rng);
      const Trajectory traj =
          RunDynamics(games[g], x1, epsilon, max_steps, explorer, seed);
      if (traj.hit_step) times.push_back(*traj.hit_step - 1);
    }
    row.hits = static_cast<int>(times.size());
    row.hit_frequency = static_cast<double>(row.hits) / trials_per_game;
    if (times.empty()) {
      row.mean_hitting_time = std::numeric_limits<double>::quiet_NaN();
      row.median_hitting_time = std::numeric_limits<double>::quiet_NaN();
    } else {
      double sum = 0.0;
      for (double v : times) sum += v;
      row.mean_hitting_time = sum / times.size();
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      row.median_hitting_time = times.size() % 2 == 1
                                    ? times[mid]
                                    : 0.5 * (times[mid - 1] + times[mid]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace satpath
