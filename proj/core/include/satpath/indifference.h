#ifndef SATPATH_INDIFFERENCE_H_
#define SATPATH_INDIFFERENCE_H_

#include <span>
#include <vector>

#include "satpath/game.h"

namespace satpath {

// Tools for the boundary argument behind subgame jumps: the fully mixed
// perturbation w_xi, the segment z_lambda from an equilibrium x_star toward
// it, and the indifference polynomial g(lambda) along that segment.

// w_xi: unsatisfied players move to (1 - xi) x_k + xi * Uniform; satisfied
// players are copied bitwise. Requires 0 < xi < 1.
StrategyProfile BuildWXi(const Game& game, const StrategyProfile& x_k,
                         const SatisfactionReport& report_k, double xi);

// z_lambda: (1 - lambda) x_star + lambda w_xi for players in `unsat_set`,
// x_k (bitwise) for everyone else. Requires 0 <= lambda <= 1.
StrategyProfile BuildZLambda(const StrategyProfile& x_star,
                             const StrategyProfile& w_xi,
                             std::span<const int> unsat_set,
                             const StrategyProfile& x_k, double lambda);

// Monomial coefficients (constant term first) of
//   g(lambda) = sum_{a^{-i}} [r^i(a, a^{-i}) - r^i(a', a^{-i})]
//               * prod_{j != i} z^j_lambda(a^j),
// a polynomial of degree <= n - 1. Obtained by evaluating g at n equispaced
// nodes on [0, 1] and interpolating. Length of the result is n.
std::vector<double> IndifferencePoly(const Game& game,
                                     const StrategyProfile& x_star,
                                     const StrategyProfile& w_xi,
                                     std::span<const int> unsat_set,
                                     const StrategyProfile& x_k, int player,
                                     int action, int alt_action);

// Direct evaluation of g at one lambda.
double IndifferenceValue(const Game& game, const StrategyProfile& x_star,
                         const StrategyProfile& w_xi,
                         std::span<const int> unsat_set,
                         const StrategyProfile& x_k, int player, int action,
                         int alt_action, double lambda);

// Horner evaluation of monomial coefficients (constant term first).
double EvaluatePoly(std::span<const double> coeffs, double x);

// Degree ignoring trailing exact zeros; -1 for the zero polynomial.
int PolyDegree(std::span<const double> coeffs);

// A polynomial of degree d that vanishes at more than d distinct points is
// identically zero. Returns true iff the number of distinct roots exceeds
// the degree and |g(root)| <= tolerance at each root.
bool ZeroPolyCheck(std::span<const double> coeffs,
                   std::span<const double> roots_observed, double tolerance);

}  // namespace satpath

#endif  // SATPATH_INDIFFERENCE_H_
