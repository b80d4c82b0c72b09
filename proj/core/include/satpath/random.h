#ifndef SATPATH_RANDOM_H_
#define SATPATH_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

#include "satpath/game.h"

namespace satpath {

// std::mt19937_64 has a standardized output sequence; the distributions
// below are written out by hand because the standard library's distribution
// algorithms are implementation-defined and would break cross-platform
// reproducibility.
using Rng = std::mt19937_64;

// Uniform double on [0, 1) with 53 random bits.
double Uniform01(Rng& rng);
// Uniform double on [lo, hi).
double UniformReal(Rng& rng, double lo, double hi);
// Uniform integer in [0, n), unbiased (rejection sampling).
int UniformIndex(Rng& rng, int n);

// Dirichlet(1, ..., 1) sample: a uniformly distributed point of the simplex.
MixedStrategy SampleDirichletUniform(Rng& rng, int num_actions);
// Uniformly chosen vertex of the simplex.
MixedStrategy SamplePureUniform(Rng& rng, int num_actions);

// Deterministic seed derivation (splitmix64 finalizer over the inputs).
std::uint64_t MixSeed(std::uint64_t seed);
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b = 0);

}  // namespace satpath

#endif  // SATPATH_RANDOM_H_
