#include "satpath/indifference.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "satpath/errors.h"

namespace satpath {
namespace {

bool Contains(std::span<const int> set, int player) {
  return std::find(set.begin(), set.end(), player) != set.end();
}

void CheckSameShape(const StrategyProfile& a, const StrategyProfile& b) {
  if (a.num_players() != b.num_players()) {
    throw InvalidInput("profiles have different numbers of players");
  }
  for (int i = 0; i < a.num_players(); ++i) {
    if (a[i].num_actions() != b[i].num_actions()) {
      throw InvalidInput("profiles disagree on player " + std::to_string(i) +
                         "'s action count");
    }
  }
}

// Newton divided differences on the nodes, expanded to monomial form.
std::vector<double> Interpolate(const std::vector<double>& nodes,
                                std::vector<double> values) {
  const int m = static_cast<int>(nodes.size());
  for (int level = 1; level < m; ++level) {
    for (int k = m - 1; k >= level; --k) {
      values[k] = (values[k] - values[k - 1]) / (nodes[k] - nodes[k - level]);
    }
  }
  // Horner on the Newton form: p = c0 + (x - x0)(c1 + (x - x1)(c2 + ...)).
  std::vector<double> coeffs(m, 0.0);
  for (int k = m - 1; k >= 0; --k) {
    // coeffs <- coeffs * (x - nodes[k]) + values[k]
    std::vector<double> next(m, 0.0);
    for (int d = 0; d < m; ++d) {
      if (coeffs[d] == 0.0) continue;
      if (d + 1 < m) next[d + 1] += coeffs[d];
      next[d] -= coeffs[d] * nodes[k];
    }
    next[0] += values[k];
    coeffs = std::move(next);
  }
  return coeffs;
}

}  // namespace

StrategyProfile BuildWXi(const Game& game, const StrategyProfile& x_k,
                         const SatisfactionReport& report_k, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw InvalidInput("xi must lie in (0, 1), got " + std::to_string(xi));
  }
  game.ValidateProfile(x_k);
  if (static_cast<int>(report_k.gaps.size()) != game.num_players()) {
    throw InvalidInput("satisfaction report does not match the game");
  }
  std::vector<MixedStrategy> out;
  out.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    if (report_k.IsSatisfied(i)) {
      out.push_back(x_k[i]);
      continue;
    }
    const int m = game.num_actions(i);
    const double floor = xi / m;
    std::vector<double> probs(m);
    for (int a = 0; a < m; ++a) probs[a] = (1.0 - xi) * x_k[i][a] + floor;
    out.emplace_back(std::move(probs));
  }
  return StrategyProfile(std::move(out));
}

StrategyProfile BuildZLambda(const StrategyProfile& x_star,
                             const StrategyProfile& w_xi,
                             std::span<const int> unsat_set,
                             const StrategyProfile& x_k, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidInput("lambda must lie in [0, 1], got " +
                       std::to_string(lambda));
  }
  CheckSameShape(x_star, w_xi);
  CheckSameShape(x_star, x_k);
  for (int i : unsat_set) {
    if (i < 0 || i >= x_k.num_players()) {
      throw InvalidInput("unsatisfied set names player " + std::to_string(i) +
                         " out of range");
    }
  }
  std::vector<MixedStrategy> out;
  out.reserve(x_k.num_players());
  for (int i = 0; i < x_k.num_players(); ++i) {
    if (!Contains(unsat_set, i)) {
      out.push_back(x_k[i]);
      continue;
    }
    if (lambda == 0.0) {
      out.push_back(x_star[i]);
      continue;
    }
    if (lambda == 1.0) {
      out.push_back(w_xi[i]);
      continue;
    }
    std::vector<double> probs(x_k[i].num_actions());
    for (int a = 0; a < x_k[i].num_actions(); ++a) {
      probs[a] = (1.0 - lambda) * x_star[i][a] + lambda * w_xi[i][a];
    }
    out.emplace_back(std::move(probs));
  }
  return StrategyProfile(std::move(out));
}

double IndifferenceValue(const Game& game, const StrategyProfile& x_star,
                         const StrategyProfile& w_xi,
                         std::span<const int> unsat_set,
                         const StrategyProfile& x_k, int player, int action,
                         int alt_action, double lambda) {
  game.ValidatePlayer(player);
  if (action < 0 || action >= game.num_actions(player) || alt_action < 0 ||
      alt_action >= game.num_actions(player)) {
    throw InvalidInput("indifference actions out of range");
  }
  if (action == alt_action) {
    throw InvalidInput("indifference polynomial needs two distinct actions");
  }
  const StrategyProfile z = BuildZLambda(x_star, w_xi, unsat_set, x_k, lambda);
  game.ValidateProfile(z);

  const int n = game.num_players();
  const auto table = game.payoffs(player);
  const std::size_t stride = game.stride(player);
  // Sum over opponent profiles a^{-i}, with player i's slot held at 0.
  std::vector<int> actions(n, 0);
  double total = 0.0;
  while (true) {
    double weight = 1.0;
    std::size_t base = 0;
    for (int j = 0; j < n; ++j) {
      if (j == player) continue;
      weight *= z[j][actions[j]];
      base += game.stride(j) * actions[j];
    }
    total += (table[base + stride * action] - table[base + stride * alt_action]) *
             weight;
    int p = n - 1;
    for (; p >= 0; --p) {
      if (p == player) continue;
      if (++actions[p] < game.num_actions(p)) break;
      actions[p] = 0;
    }
    if (p < 0) break;
  }
  return total;
}

std::vector<double> IndifferencePoly(const Game& game,
                                     const StrategyProfile& x_star,
                                     const StrategyProfile& w_xi,
                                     std::span<const int> unsat_set,
                                     const StrategyProfile& x_k, int player,
                                     int action, int alt_action) {
  const int n = game.num_players();
  std::vector<double> nodes(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
  }
  std::vector<double> values(n);
  for (int k = 0; k < n; ++k) {
    values[k] = IndifferenceValue(game, x_star, w_xi, unsat_set, x_k, player,
                                  action, alt_action, nodes[k]);
  }
  return Interpolate(nodes, std::move(values));
}

double EvaluatePoly(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int PolyDegree(std::span<const double> coeffs) {
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
    if (coeffs[d] != 0.0) return d;
  }
  return -1;
}

bool ZeroPolyCheck(std::span<const double> coeffs,
                   std::span<const double> roots_observed, double tolerance) {
  std::vector<double> distinct(roots_observed.begin(), roots_observed.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (static_cast<int>(distinct.size()) <= PolyDegree(coeffs)) return false;
  for (double root : distinct) {
    if (!(std::abs(EvaluatePoly(coeffs, root)) <= tolerance)) return false;
  }
  return true;
}

}  // namespace satpath
