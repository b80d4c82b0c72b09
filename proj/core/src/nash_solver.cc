#include "satpath/nash_solver.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "satpath/errors.h"

namespace satpath {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Newton stops once the residual reaches this multiple of the payoff scale.
constexpr double kNewtonConvergence = 1e-14;

// Outcome of one support: `accepted` is set when the support yields an
// equilibrium candidate; `fallback` is the clamped solution (if any) kept
// for SolverIncomplete diagnostics.
struct SupportOutcome {
  std::optional<StrategyProfile> accepted;
  std::optional<StrategyProfile> fallback;
  double fallback_gap = std::numeric_limits<double>::infinity();
};

// Advances local support indices (last player fastest).
bool NextLocal(std::vector<int>& local, const SupportProfile& sp) {
  for (int p = static_cast<int>(local.size()) - 1; p >= 0; --p) {
    if (++local[p] < static_cast<int>(sp.supports[p].size())) return true;
    local[p] = 0;
  }
  return false;
}

// True if some supported action of some player is strictly beaten by another
// of that player's actions against every opponent profile drawn from the
// opponents' supports. Such a support cannot carry an equilibrium.
bool ConditionallyDominated(const Game& game, const SupportProfile& sp) {
  const int n = game.num_players();
  for (int i = 0; i < n; ++i) {
    const auto table = game.payoffs(i);
    // Opponent profiles drawn from supports; player i's entry is pinned to
    // its first supported action and adjusted via the stride below.
    SupportProfile others = sp;
    others.supports[i] = {0};
    for (int a : sp.supports[i]) {
      for (int alt = 0; alt < game.num_actions(i); ++alt) {
        if (alt == a) continue;
        bool dominated = true;
        std::vector<int> local(n, 0);
        do {
          std::size_t base = 0;
          for (int k = 0; k < n; ++k) {
            if (k != i) base += game.stride(k) * others.supports[k][local[k]];
          }
          if (table[base + game.stride(i) * alt] <=
              table[base + game.stride(i) * a]) {
            dominated = false;
            break;
          }
        } while (NextLocal(local, others));
        if (dominated) return true;
      }
    }
  }
  return false;
}

// Solution of the indifference system restricted to the support: one weight
// per supported action per player.
using SupportWeights = std::vector<std::vector<double>>;

// Least-squares solve with rank-revealing decomposition; returns nothing when
// the residual exceeds `residual_tolerance`.
std::optional<VectorXd> SolveLinear(const MatrixXd& a, const VectorXd& b,
                                    double residual_tolerance) {
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(a);
  VectorXd z = cod.solve(b);
  if (!z.allFinite()) return std::nullopt;
  if ((a * z - b).lpNorm<Eigen::Infinity>() > residual_tolerance) {
    return std::nullopt;
  }
  return z;
}

// Two players: each player's indifference conditions are linear in the
// opponent's weights alone, so the block fixed-point iteration over the two
// linear systems converges after one sweep.
std::optional<SupportWeights> SolveTwoPlayer(const Game& game,
                                             const SupportProfile& sp,
                                             const SolverConfig& config) {
  SupportWeights weights(2);
  for (int i = 0; i < 2; ++i) {
    const int opp = 1 - i;
    const auto& own = sp.supports[i];
    const auto& theirs = sp.supports[opp];
    const int rows = static_cast<int>(own.size()) + 1;
    const int cols = static_cast<int>(theirs.size()) + 1;
    MatrixXd a = MatrixXd::Zero(rows, cols);
    VectorXd b = VectorXd::Zero(rows);
    const auto table = game.payoffs(i);
    for (int r = 0; r < static_cast<int>(own.size()); ++r) {
      for (int c = 0; c < static_cast<int>(theirs.size()); ++c) {
        a(r, c) = table[game.stride(i) * own[r] + game.stride(opp) * theirs[c]];
      }
      a(r, cols - 1) = -1.0;
    }
    for (int c = 0; c + 1 < cols; ++c) a(rows - 1, c) = 1.0;
    b(rows - 1) = 1.0;
    auto z = SolveLinear(a, b, config.residual_tolerance);
    if (!z) return std::nullopt;
    weights[opp].assign(z->data(), z->data() + theirs.size());
  }
  return weights;
}

// Stacked indifference system for any number of players. Unknowns and
// equations share one layout: for each player, its supported weights
// followed by its value v_i. Equations are w_i(s) - v_i = 0 for supported s
// and sum_s x_i(s) - 1 = 0.
class SupportSystem {
 public:
  SupportSystem(const Game& game, const SupportProfile& sp)
      : game_(game), sp_(sp), n_(game.num_players()) {
    offsets_.resize(n_);
    int at = 0;
    for (int i = 0; i < n_; ++i) {
      offsets_[i] = at;
      at += static_cast<int>(sp.supports[i].size()) + 1;
    }
    size_ = at;
  }

  int size() const { return size_; }
  int XIndex(int player, int local) const { return offsets_[player] + local; }
  int VIndex(int player) const {
    return offsets_[player] + static_cast<int>(sp_.supports[player].size());
  }

  // Residual, and the analytic Jacobian when `jac` is non-null. Derivative
  // of w_i(s) with respect to x_j(b) is the expected payoff of player i when
  // i plays s and j plays b with the remaining players mixed.
  void Evaluate(const VectorXd& z, VectorXd* residual, MatrixXd* jac) const {
    residual->setZero(size_);
    if (jac != nullptr) jac->setZero(size_, size_);
    std::vector<int> local(n_, 0);
    std::vector<double> p(n_);
    do {
      std::size_t flat = 0;
      for (int k = 0; k < n_; ++k) {
        flat += game_.stride(k) * sp_.supports[k][local[k]];
        p[k] = z(XIndex(k, local[k]));
      }
      for (int i = 0; i < n_; ++i) {
        const double r = game_.payoffs(i)[flat];
        double others = 1.0;
        for (int k = 0; k < n_; ++k) {
          if (k != i) others *= p[k];
        }
        (*residual)(XIndex(i, local[i])) += r * others;
        if (jac == nullptr) continue;
        for (int j = 0; j < n_; ++j) {
          if (j == i) continue;
          double rest = 1.0;
          for (int k = 0; k < n_; ++k) {
            if (k != i && k != j) rest *= p[k];
          }
          (*jac)(XIndex(i, local[i]), XIndex(j, local[j])) += r * rest;
        }
      }
    } while (NextLocal(local, sp_));

    for (int i = 0; i < n_; ++i) {
      const int m = static_cast<int>(sp_.supports[i].size());
      double total = 0.0;
      for (int s = 0; s < m; ++s) {
        (*residual)(XIndex(i, s)) -= z(VIndex(i));
        total += z(XIndex(i, s));
        if (jac != nullptr) {
          (*jac)(XIndex(i, s), VIndex(i)) = -1.0;
          (*jac)(VIndex(i), XIndex(i, s)) = 1.0;
        }
      }
      (*residual)(VIndex(i)) = total - 1.0;
    }
  }

  VectorXd UniformStart() const {
    VectorXd z = VectorXd::Zero(size_);
    for (int i = 0; i < n_; ++i) {
      const int m = static_cast<int>(sp_.supports[i].size());
      for (int s = 0; s < m; ++s) z(XIndex(i, s)) = 1.0 / m;
    }
    // Start each value at the mean supported payoff.
    VectorXd residual;
    Evaluate(z, &residual, nullptr);
    for (int i = 0; i < n_; ++i) {
      const int m = static_cast<int>(sp_.supports[i].size());
      double mean = 0.0;
      for (int s = 0; s < m; ++s) mean += residual(XIndex(i, s));
      z(VIndex(i)) = mean / m;
    }
    return z;
  }

  SupportWeights Weights(const VectorXd& z) const {
    SupportWeights out(n_);
    for (int i = 0; i < n_; ++i) {
      for (std::size_t s = 0; s < sp_.supports[i].size(); ++s) {
        out[i].push_back(z(XIndex(i, static_cast<int>(s))));
      }
    }
    return out;
  }

 private:
  const Game& game_;
  const SupportProfile& sp_;
  int n_;
  std::vector<int> offsets_;
  int size_ = 0;
};

std::optional<SupportWeights> SolveNewton(const Game& game,
                                          const SupportProfile& sp,
                                          const SolverConfig& config) {
  const SupportSystem system(game, sp);
  const double scale = std::max(1.0, game.MaxAbsPayoff());
  VectorXd z = system.UniformStart();
  VectorXd residual;
  MatrixXd jac;
  system.Evaluate(z, &residual, &jac);
  double norm = residual.norm();

  for (int iter = 0; iter < config.max_newton_iterations; ++iter) {
    if (residual.lpNorm<Eigen::Infinity>() <= kNewtonConvergence * scale) {
      break;
    }
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(jac);
    const VectorXd step = cod.solve(-residual);
    if (!step.allFinite()) return std::nullopt;

    // Backtracking on the residual norm.
    double t = 1.0;
    bool moved = false;
    VectorXd trial_residual;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const VectorXd trial = z + t * step;
      system.Evaluate(trial, &trial_residual, nullptr);
      const double trial_norm = trial_residual.norm();
      if (std::isfinite(trial_norm) && trial_norm < (1.0 - 1e-4 * t) * norm) {
        z = trial;
        norm = trial_norm;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    // Iterates far outside the simplex will not come back to a valid root.
    if (z.lpNorm<Eigen::Infinity>() > 1e6 * scale) return std::nullopt;
    system.Evaluate(z, &residual, &jac);
  }
  if (!(residual.lpNorm<Eigen::Infinity>() <= config.residual_tolerance)) {
    return std::nullopt;
  }
  return system.Weights(z);
}

// Scatters support weights into full strategies, clamping negatives that are
// within tolerance. Returns the clamped profile and whether every negative
// was within tolerance.
std::optional<StrategyProfile> ToProfile(const Game& game,
                                         const SupportProfile& sp,
                                         const SupportWeights& weights,
                                         double tolerance,
                                         bool* within_tolerance) {
  *within_tolerance = true;
  std::vector<MixedStrategy> strategies;
  for (int i = 0; i < game.num_players(); ++i) {
    std::vector<double> probs(game.num_actions(i), 0.0);
    double total = 0.0;
    for (std::size_t s = 0; s < sp.supports[i].size(); ++s) {
      double w = weights[i][s];
      if (!std::isfinite(w)) return std::nullopt;
      if (w < -tolerance) *within_tolerance = false;
      w = std::max(w, 0.0);
      probs[sp.supports[i][s]] = w;
      total += w;
    }
    if (!(total > 0.0)) return std::nullopt;
    for (double& p : probs) p /= total;
    strategies.emplace_back(std::move(probs));
  }
  return StrategyProfile(std::move(strategies));
}

SupportOutcome SolveSupport(const Game& game, const SupportProfile& sp,
                            const SolverConfig& config) {
  SupportOutcome out;
  if (ConditionallyDominated(game, sp)) {
    // Still report the uniform-on-support point as a diagnostic candidate.
    std::vector<MixedStrategy> strategies;
    for (int i = 0; i < game.num_players(); ++i) {
      std::vector<double> probs(game.num_actions(i), 0.0);
      for (int a : sp.supports[i]) probs[a] = 1.0 / sp.supports[i].size();
      strategies.emplace_back(std::move(probs));
    }
    out.fallback = StrategyProfile(std::move(strategies));
    out.fallback_gap = MaxDeviationGap(game, *out.fallback);
    return out;
  }
  const auto weights = game.num_players() == 2
                           ? SolveTwoPlayer(game, sp, config)
                           : SolveNewton(game, sp, config);
  if (!weights) return out;
  bool nonnegative = false;
  auto profile = ToProfile(game, sp, *weights, config.tolerance, &nonnegative);
  if (!profile) return out;
  out.fallback_gap = MaxDeviationGap(game, *profile);
  if (nonnegative) {
    // Unsupported actions must not pay more than the supported ones.
    bool deviation = false;
    for (int i = 0; i < game.num_players() && !deviation; ++i) {
      const auto w = PureActionPayoffs(game, *profile, i);
      double supported = -std::numeric_limits<double>::infinity();
      for (int a : sp.supports[i]) supported = std::max(supported, w[a]);
      for (int a = 0; a < game.num_actions(i); ++a) {
        if (w[a] > supported + config.tolerance) deviation = true;
      }
    }
    if (!deviation) out.accepted = *profile;
  }
  out.fallback = std::move(profile);
  return out;
}

// All nonempty subsets of {0..m-1} of size <= cap, ordered lexicographically
// as ascending index lists.
std::vector<std::vector<int>> OrderedSubsets(int m, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> grow = [&](int next) {
    for (int a = next; a < m; ++a) {
      current.push_back(a);
      if (static_cast<int>(current.size()) <= cap) {
        out.push_back(current);
        grow(a + 1);
      }
      current.pop_back();
    }
  };
  grow(0);
  return out;
}

}  // namespace

int SupportProfile::TotalSize() const {
  int total = 0;
  for (const auto& s : supports) total += static_cast<int>(s.size());
  return total;
}

void SupportProfile::Validate(const Game& game) const {
  if (static_cast<int>(supports.size()) != game.num_players()) {
    throw InvalidInput("support profile has wrong number of players");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const auto& s = supports[i];
    if (s.empty()) {
      throw InvalidInput("support of player " + std::to_string(i) +
                         " is empty");
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] < 0 || s[k] >= game.num_actions(i)) {
        throw InvalidInput("support of player " + std::to_string(i) +
                           " names action " + std::to_string(s[k]) +
                           " out of range");
      }
      if (k > 0 && s[k] <= s[k - 1]) {
        throw InvalidInput("support of player " + std::to_string(i) +
                           " must be strictly ascending");
      }
    }
  }
}

void SolverConfig::Validate() const {
  if (!(tolerance > 0.0) || !(residual_tolerance > 0.0)) {
    throw InvalidInput("solver tolerances must be positive");
  }
  if (max_support_size < 0) {
    throw InvalidInput("max_support_size must be >= 0 (0 = unlimited)");
  }
  if (max_newton_iterations < 1) {
    throw InvalidInput("max_newton_iterations must be >= 1");
  }
}

std::optional<StrategyProfile> SolveOnSupport(const Game& game,
                                              const SupportProfile& support,
                                              const SolverConfig& config) {
  config.Validate();
  support.Validate(game);
  return SolveSupport(game, support, config).accepted;
}

StrategyProfile FindNash(const Game& game, const SolverConfig& config) {
  config.Validate();
  const int n = game.num_players();
  std::vector<std::vector<std::vector<int>>> subsets(n);
  std::vector<int> largest(n);
  for (int i = 0; i < n; ++i) {
    const int m = game.num_actions(i);
    const int cap = config.max_support_size > 0
                        ? std::min(m, config.max_support_size)
                        : m;
    subsets[i] = OrderedSubsets(m, cap);
    largest[i] = cap;
  }
  // Largest total size achievable by players k..n-1.
  std::vector<int> tail_max(n + 1, 0);
  for (int k = n - 1; k >= 0; --k) tail_max[k] = tail_max[k + 1] + largest[k];

  std::optional<StrategyProfile> found;
  // Placeholder until some support produces a candidate.
  StrategyProfile best = UniformProfile(game);
  double best_gap = std::numeric_limits<double>::infinity();

  SupportProfile sp;
  sp.supports.resize(n);
  std::function<bool(int, int)> visit = [&](int player, int remaining) {
    if (player == n) {
      if (remaining != 0) return false;
      SupportOutcome outcome = SolveSupport(game, sp, config);
      if (outcome.accepted &&
          VerifyNash(game, *outcome.accepted, config.tolerance)) {
        found = std::move(outcome.accepted);
        return true;
      }
      if (outcome.fallback && outcome.fallback_gap < best_gap) {
        best_gap = outcome.fallback_gap;
        best = *outcome.fallback;
      }
      return false;
    }
    const int players_after = n - player - 1;
    for (const auto& s : subsets[player]) {
      const int rest = remaining - static_cast<int>(s.size());
      if (rest < players_after || rest > tail_max[player + 1]) continue;
      sp.supports[player] = s;
      if (visit(player + 1, rest)) return true;
    }
    return false;
  };

  for (int total = n; total <= tail_max[0]; ++total) {
    if (visit(0, total)) return *found;
  }
  throw SolverIncomplete(
      "support enumeration found no verified equilibrium (best max gap " +
          std::to_string(best_gap) + ")",
      std::move(best), best_gap);
}

Game ReduceGame(const Game& game,
                const std::map<int, MixedStrategy>& frozen) {
  const int n = game.num_players();
  for (const auto& [player, strategy] : frozen) {
    game.ValidatePlayer(player);
    if (strategy.num_actions() != game.num_actions(player)) {
      throw InvalidInput("frozen strategy of player " +
                         std::to_string(player) + " has wrong dimension");
    }
  }
  std::vector<int> free_players;
  for (int i = 0; i < n; ++i) {
    if (!frozen.contains(i)) free_players.push_back(i);
  }
  if (free_players.empty()) {
    throw InvalidInput("subgame needs at least one free player");
  }
  std::vector<int> counts;
  for (int i : free_players) counts.push_back(game.num_actions(i));
  const int m = static_cast<int>(free_players.size());
  std::vector<std::size_t> strides(m, 1);
  for (int k = m - 2; k >= 0; --k) strides[k] = strides[k + 1] * counts[k + 1];
  const std::size_t reduced_size = strides[0] * counts[0];

  std::vector<std::vector<double>> payoffs(m,
                                           std::vector<double>(reduced_size));
  std::vector<int> actions(n, 0);
  std::size_t flat = 0;
  do {
    double weight = 1.0;
    for (const auto& [player, strategy] : frozen) {
      weight *= strategy[actions[player]];
    }
    std::size_t reduced = 0;
    for (int k = 0; k < m; ++k) reduced += strides[k] * actions[free_players[k]];
    for (int k = 0; k < m; ++k) {
      payoffs[k][reduced] += game.payoffs(free_players[k])[flat] * weight;
    }
    ++flat;
    int p = n - 1;
    for (; p >= 0; --p) {
      if (++actions[p] < game.num_actions(p)) break;
      actions[p] = 0;
    }
    if (p < 0) break;
  } while (true);
  return Game(std::move(counts), std::move(payoffs), game.name());
}

StrategyProfile FindSubgameNash(const Game& game,
                                const std::map<int, MixedStrategy>& frozen,
                                const SolverConfig& config) {
  const Game reduced = ReduceGame(game, frozen);
  const StrategyProfile sub = FindNash(reduced, config);
  std::vector<MixedStrategy> full;
  int next_free = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    auto it = frozen.find(i);
    if (it != frozen.end()) {
      full.push_back(it->second);
    } else {
      full.push_back(sub[next_free++]);
    }
  }
  StrategyProfile profile(std::move(full));
  for (int i = 0; i < game.num_players(); ++i) {
    if (frozen.contains(i)) continue;
    if (DeviationGap(game, profile, i) > config.tolerance) {
      const double gap = MaxDeviationGap(game, profile);
      throw SolverIncomplete(
          "subgame equilibrium does not lift to the full game within "
          "tolerance",
          profile, gap);
    }
  }
  return profile;
}

bool VerifyNash(const Game& game, const StrategyProfile& profile,
                double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("epsilon must be a finite nonnegative number");
  }
  game.ValidateProfile(profile);
  return MaxDeviationGap(game, profile) <= epsilon;
}

}  // namespace satpath
