#ifndef SATPATH_TESTS_ORACLES_H_
#define SATPATH_TESTS_ORACLES_H_

// Independent reference computations used only by tests. Nothing here calls
// the library's reward, gap, solver, or interpolation routines; it reads raw
// payoff tables and strategy entries directly.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "satpath/game.h"

namespace satpath::testing {

// Recursive enumeration of sum_a r^i(a) prod_j x^j(a^j). The flat index is
// accumulated as index * |A^j| + a^j, which is the row-major layout with the
// last player fastest.
inline double OracleReward(const Game& game,
                           const std::vector<std::vector<double>>& x,
                           int player) {
  const auto table = game.payoffs(player);
  std::function<double(int, std::size_t, double)> go =
      [&](int j, std::size_t index, double weight) -> double {
    if (j == game.num_players()) return table[index] * weight;
    double total = 0.0;
    for (int a = 0; a < game.num_actions(j); ++a) {
      total += go(j + 1, index * game.num_actions(j) + a, weight * x[j][a]);
    }
    return total;
  };
  return go(0, 0, 1.0);
}

inline std::vector<std::vector<double>> Raw(const StrategyProfile& p) {
  std::vector<std::vector<double>> out;
  for (int i = 0; i < p.num_players(); ++i) {
    out.emplace_back(p[i].probs().begin(), p[i].probs().end());
  }
  return out;
}

inline double OracleReward(const Game& game, const StrategyProfile& p,
                           int player) {
  return OracleReward(game, Raw(p), player);
}

inline std::vector<double> OraclePurePayoffs(const Game& game,
                                             const StrategyProfile& p,
                                             int player) {
  auto x = Raw(p);
  std::vector<double> out(game.num_actions(player));
  for (int a = 0; a < game.num_actions(player); ++a) {
    x[player].assign(game.num_actions(player), 0.0);
    x[player][a] = 1.0;
    out[a] = OracleReward(game, x, player);
  }
  return out;
}

inline double OracleGap(const Game& game, const StrategyProfile& p,
                        int player) {
  const auto w = OraclePurePayoffs(game, p, player);
  return *std::max_element(w.begin(), w.end()) - OracleReward(game, p, player);
}

// Closed-form 2x2 reference: pure equilibria in lexicographic order, and the
// fully mixed equilibrium from the two indifference equations when there is
// no pure one.
struct TwoByTwoOracle {
  std::vector<std::pair<int, int>> pure;  // lexicographic order
  std::optional<std::pair<double, double>> mixed;  // P(action 0) per player
};

inline TwoByTwoOracle SolveTwoByTwo(const Game& game) {
  auto r = [&](int player, int a, int b) {
    return game.payoffs(player)[2 * a + b];
  };
  TwoByTwoOracle out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (r(0, a, b) >= r(0, 1 - a, b) && r(1, a, b) >= r(1, a, 1 - b)) {
        out.pure.emplace_back(a, b);
      }
    }
  }
  if (out.pure.empty()) {
    // Column mixes q on action 0 so the row player is indifferent, and
    // vice versa.
    const double q = (r(0, 1, 1) - r(0, 0, 1)) /
                     (r(0, 0, 0) - r(0, 0, 1) - r(0, 1, 0) + r(0, 1, 1));
    const double p = (r(1, 1, 1) - r(1, 1, 0)) /
                     (r(1, 0, 0) - r(1, 1, 0) - r(1, 0, 1) + r(1, 1, 1));
    out.mixed = std::make_pair(p, q);
  }
  return out;
}

// Expands g(lambda) symbolically: each opponent factor is the affine
// polynomial c + d * lambda, and the products are multiplied out exactly.
inline std::vector<double> OracleIndifferencePoly(
    const Game& game, const StrategyProfile& x_star,
    const StrategyProfile& w_xi, const std::vector<int>& unsat,
    const StrategyProfile& x_k, int player, int a, int alt) {
  const int n = game.num_players();
  auto is_unsat = [&](int j) {
    return std::find(unsat.begin(), unsat.end(), j) != unsat.end();
  };
  std::vector<double> total(n, 0.0);
  std::vector<int> actions(n, 0);
  std::function<void(int)> go = [&](int j) {
    if (j == n) {
      std::vector<double> poly = {1.0};
      for (int k = 0; k < n; ++k) {
        if (k == player) continue;
        double c, d;
        if (is_unsat(k)) {
          c = x_star[k][actions[k]];
          d = w_xi[k][actions[k]] - c;
        } else {
          c = x_k[k][actions[k]];
          d = 0.0;
        }
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t e = 0; e < poly.size(); ++e) {
          next[e] += poly[e] * c;
          next[e + 1] += poly[e] * d;
        }
        poly = std::move(next);
      }
      std::size_t hi = 0, lo = 0;
      for (int k = 0; k < n; ++k) {
        const int act = k == player ? a : actions[k];
        const int alt_act = k == player ? alt : actions[k];
        hi = hi * game.num_actions(k) + act;
        lo = lo * game.num_actions(k) + alt_act;
      }
      const double diff = game.payoffs(player)[hi] - game.payoffs(player)[lo];
      for (std::size_t e = 0; e < poly.size() && e < total.size(); ++e) {
        total[e] += diff * poly[e];
      }
      return;
    }
    if (j == player) {
      go(j + 1);
      return;
    }
    for (int b = 0; b < game.num_actions(j); ++b) {
      actions[j] = b;
      go(j + 1);
    }
  };
  go(0);
  return total;
}

// Test-side generators, seeded from std::mt19937_64 and independent of the
// library's sampling helpers.
inline Game OracleRandomGame(std::mt19937_64& rng,
                             const std::vector<int>& counts) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::size_t profiles = 1;
  for (int m : counts) profiles *= m;
  std::vector<std::vector<double>> payoffs(counts.size(),
                                           std::vector<double>(profiles));
  for (auto& t : payoffs) {
    for (double& r : t) r = u(rng);
  }
  return Game(counts, std::move(payoffs));
}

inline MixedStrategy OracleRandomStrategy(std::mt19937_64& rng, int m) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(m);
  double s = 0.0;
  for (double& x : v) s += (x = e(rng));
  for (double& x : v) x /= s;
  return MixedStrategy(std::move(v));
}

inline StrategyProfile OracleRandomProfile(std::mt19937_64& rng,
                                           const Game& game) {
  std::vector<MixedStrategy> s;
  for (int i = 0; i < game.num_players(); ++i) {
    s.push_back(OracleRandomStrategy(rng, game.num_actions(i)));
  }
  return StrategyProfile(std::move(s));
}

inline StrategyProfile OracleRandomPureProfile(std::mt19937_64& rng,
                                               const Game& game) {
  std::vector<MixedStrategy> s;
  for (int i = 0; i < game.num_players(); ++i) {
    std::uniform_int_distribution<int> pick(0, game.num_actions(i) - 1);
    s.push_back(MixedStrategy::Pure(game.num_actions(i), pick(rng)));
  }
  return StrategyProfile(std::move(s));
}

inline std::vector<int> OracleRandomCounts(std::mt19937_64& rng, int n,
                                           int lo, int hi) {
  std::uniform_int_distribution<int> pick(lo, hi);
  std::vector<int> counts(n);
  for (int& m : counts) m = pick(rng);
  return counts;
}

}  // namespace satpath::testing

#endif  // SATPATH_TESTS_ORACLES_H_
