#include "satpath/satisficing.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "satpath/errors.h"
#include "satpath/indifference.h"
#include "satpath/random.h"

namespace satpath {
namespace {

constexpr int kMaxEscalations = 3;
constexpr int kEscalationFactor = 10;

void CheckEpsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("epsilon must be a finite nonnegative number");
  }
}

void CheckSameShape(const StrategyProfile& x, const StrategyProfile& y) {
  if (x.num_players() != y.num_players()) {
    throw InvalidInput("profiles have different numbers of players");
  }
  for (int i = 0; i < x.num_players(); ++i) {
    if (x[i].num_actions() != y[i].num_actions()) {
      throw InvalidInput("profiles disagree on player " + std::to_string(i) +
                         "'s action count");
    }
  }
}

bool InNoBGiven(const Game& game, const StrategyProfile& x,
                const SatisfactionReport& report_x, const StrategyProfile& y,
                double epsilon) {
  if (!IsAccessible(x, y, report_x)) return false;
  for (int i : report_x.unsatisfied) {
    if (DeviationGap(game, y, i) <= epsilon) return false;
  }
  return true;
}

bool InWorseGiven(const Game& game, const StrategyProfile& x,
                  const SatisfactionReport& report_x,
                  const StrategyProfile& y, double epsilon) {
  if (!InNoBGiven(game, x, report_x, y, epsilon)) return false;
  for (int i : report_x.satisfied) {
    if (DeviationGap(game, y, i) > epsilon) return true;
  }
  return false;
}

}  // namespace

const char* StepKindName(StepKind kind) {
  switch (kind) {
    case StepKind::kInitial:
      return "initial";
    case StepKind::kWorseStep:
      return "worse_step";
    case StepKind::kCase1Jump:
      return "case1_jump";
    case StepKind::kCase2Jump:
      return "case2_jump";
  }
  return "unknown";
}

StepKind StepKindFromName(const std::string& name) {
  for (StepKind k : {StepKind::kInitial, StepKind::kWorseStep,
                     StepKind::kCase1Jump, StepKind::kCase2Jump}) {
    if (name == StepKindName(k)) return k;
  }
  throw InvalidInput("unknown step kind '" + name + "'");
}

std::vector<StrategyProfile> SatisficingPath::Profiles() const {
  std::vector<StrategyProfile> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.profile);
  return out;
}

void WorseSearchConfig::Validate() const {
  if (budget < 1) throw InvalidInput("worse search budget must be >= 1");
  for (double xi : xi_grid) {
    if (!(xi > 0.0 && xi < 1.0)) {
      throw InvalidInput("xi grid values must lie in (0, 1)");
    }
  }
}

bool IsAccessible(const StrategyProfile& x, const StrategyProfile& y,
                  const SatisfactionReport& report_x) {
  CheckSameShape(x, y);
  if (static_cast<int>(report_x.gaps.size()) != x.num_players()) {
    throw InvalidInput("satisfaction report does not match the profile");
  }
  for (int i : report_x.satisfied) {
    if (!y[i].BitwiseEquals(x[i])) return false;
  }
  return true;
}

bool InNoB(const Game& game, const StrategyProfile& x,
           const StrategyProfile& y, double epsilon) {
  CheckEpsilon(epsilon);
  game.ValidateProfile(y);
  const SatisfactionReport report = ComputeSatisfaction(game, x, epsilon);
  return InNoBGiven(game, x, report, y, epsilon);
}

bool InWorse(const Game& game, const StrategyProfile& x,
             const StrategyProfile& y, double epsilon) {
  CheckEpsilon(epsilon);
  game.ValidateProfile(y);
  const SatisfactionReport report = ComputeSatisfaction(game, x, epsilon);
  return InWorseGiven(game, x, report, y, epsilon);
}

std::optional<StrategyProfile> FindWorseCandidate(
    const Game& game, const StrategyProfile& x, double epsilon,
    const WorseSearchConfig& config) {
  config.Validate();
  const SatisfactionReport report = ComputeSatisfaction(game, x, epsilon);
  if (report.satisfied.empty() || report.unsatisfied.empty()) {
    return std::nullopt;
  }
  int used = 0;
  auto accept = [&](const StrategyProfile& y) {
    ++used;
    return InWorseGiven(game, x, report, y, epsilon);
  };

  if (config.include_pure_candidates) {
    for (int i : report.unsatisfied) {
      for (int a = 0; a < game.num_actions(i) && used < config.budget; ++a) {
        StrategyProfile y = x.With(i, MixedStrategy::Pure(game.num_actions(i), a));
        if (accept(y)) return y;
      }
    }
  }
  for (double xi : config.xi_grid) {
    if (used >= config.budget) break;
    StrategyProfile y = BuildWXi(game, x, report, xi);
    if (accept(y)) return y;
  }
  Rng rng(config.rng_seed);
  while (used < config.budget) {
    std::vector<MixedStrategy> strategies = x.strategies();
    for (int i : report.unsatisfied) {
      strategies[i] = SampleDirichletUniform(rng, game.num_actions(i));
    }
    StrategyProfile y(std::move(strategies));
    if (accept(y)) return y;
  }
  return std::nullopt;
}

SatisficingPath ConstructPath(const Game& game, const StrategyProfile& x1,
                              double epsilon,
                              const WorseSearchConfig& worse_config,
                              const SolverConfig& solver_config) {
  CheckEpsilon(epsilon);
  game.ValidateProfile(x1);
  worse_config.Validate();
  SolverConfig solver = solver_config;
  solver.Validate();
  if (epsilon > 0.0) solver.tolerance = std::min(solver.tolerance, epsilon);

  SatisficingPath path;
  path.epsilon = epsilon;
  auto push = [&](StrategyProfile profile, StepKind kind) {
    SatisfactionReport report = ComputeSatisfaction(game, profile, epsilon);
    path.steps.push_back({std::move(profile), kind, std::move(report)});
  };
  push(x1, StepKind::kInitial);

  int budget = worse_config.budget;
  while (!path.steps.back().report.AllSatisfied()) {
    // Grow the unsatisfied set one Worse-step at a time.
    while (!path.steps.back().report.satisfied.empty()) {
      WorseSearchConfig search = worse_config;
      search.budget = budget;
      search.rng_seed = DeriveSeed(worse_config.rng_seed, path.steps.size(),
                                   static_cast<std::uint64_t>(path.escalations));
      auto y = FindWorseCandidate(game, path.steps.back().profile, epsilon,
                                  search);
      if (!y) break;
      push(std::move(*y), StepKind::kWorseStep);
    }

    const PathStep& last = path.steps.back();
    if (last.report.satisfied.empty()) {
      StrategyProfile star = FindNash(game, solver);
      if (!VerifyNash(game, star, epsilon)) {
        throw SolverIncomplete("equilibrium is not within epsilon", star,
                               MaxDeviationGap(game, star));
      }
      push(std::move(star), StepKind::kCase1Jump);
      break;
    }

    std::map<int, MixedStrategy> frozen;
    for (int i : last.report.satisfied) frozen.emplace(i, last.profile[i]);
    StrategyProfile star = FindSubgameNash(game, frozen, solver);
    if (VerifyNash(game, star, epsilon)) {
      push(std::move(star), StepKind::kCase2Jump);
      break;
    }
    // The subgame equilibrium leaves a frozen player unsatisfied, which is
    // impossible when Worse is truly empty: the search missed a candidate.
    if (path.escalations == kMaxEscalations) {
      path.terminal_gap = path.steps.back().report.MaxGap();
      throw WorseSearchIncomplete(
          "Worse search reported empty " +
              std::to_string(kMaxEscalations + 1) +
              " times but the subgame equilibrium was not Nash",
          std::move(path));
    }
    ++path.escalations;
    budget *= kEscalationFactor;
  }
  path.terminal_gap = path.steps.back().report.MaxGap();

  const std::vector<StrategyProfile> profiles = path.Profiles();
  const PathVerification check =
      VerifyPath(game, profiles, epsilon, /*require_terminal_nash=*/true,
                 /*require_length_bound=*/true);
  if (!check.ok) {
    throw VerificationFailure("constructed path failed verification: " +
                              check.violation->message);
  }
  return path;
}

PathVerification VerifyPath(const Game& game,
                            std::span<const StrategyProfile> path,
                            double epsilon, bool require_terminal_nash,
                            bool require_length_bound) {
  CheckEpsilon(epsilon);
  if (path.empty()) throw InvalidInput("path must contain at least one profile");
  for (const auto& profile : path) game.ValidateProfile(profile);

  PathVerification result;
  auto fail = [&](PathViolation::Kind kind, int step, int player,
                  std::string message) {
    result.ok = false;
    result.violation = PathViolation{kind, step, player, std::move(message)};
    return result;
  };

  const int n = game.num_players();
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    for (int i = 0; i < n; ++i) {
      if (DeviationGap(game, path[t], i) <= epsilon &&
          !path[t + 1][i].BitwiseEquals(path[t][i])) {
        const int step = static_cast<int>(t) + 1;
        return fail(PathViolation::Kind::kSatisfiedPlayerMoved, step, i,
                    "player " + std::to_string(i) +
                        " is satisfied at step " + std::to_string(step) +
                        " but changes strategy at step " +
                        std::to_string(step + 1));
      }
    }
  }
  const int length = static_cast<int>(path.size());
  if (require_terminal_nash) {
    const double gap = MaxDeviationGap(game, path.back());
    if (!(gap <= epsilon)) {
      return fail(PathViolation::Kind::kTerminalNotNash, length, -1,
                  "terminal profile has max deviation gap " +
                      std::to_string(gap) + " > epsilon");
    }
  }
  if (require_length_bound && length > n + 1) {
    return fail(PathViolation::Kind::kTooLong, length, -1,
                "path length " + std::to_string(length) + " exceeds n + 1 = " +
                    std::to_string(n + 1));
  }
  return result;
}

}  // namespace satpath
