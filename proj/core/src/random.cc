#include "satpath/random.h"

#include <cmath>

#include "satpath/errors.h"

namespace satpath {

double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double UniformReal(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform01(rng);
}

int UniformIndex(Rng& rng, int n) {
  if (n < 1) throw InvalidInput("UniformIndex needs n >= 1");
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<int>(draw % range);
}

MixedStrategy SampleDirichletUniform(Rng& rng, int num_actions) {
  if (num_actions < 1) throw InvalidInput("Dirichlet sample needs actions");
  std::vector<double> draws(num_actions);
  double total = 0.0;
  for (double& d : draws) {
    // -log(1 - u) with u in [0, 1) is a unit exponential and never infinite.
    d = -std::log1p(-Uniform01(rng));
    total += d;
  }
  if (total <= 0.0) return MixedStrategy::Uniform(num_actions);
  for (double& d : draws) d /= total;
  return MixedStrategy(std::move(draws));
}

MixedStrategy SamplePureUniform(Rng& rng, int num_actions) {
  return MixedStrategy::Pure(num_actions, UniformIndex(rng, num_actions));
}

std::uint64_t MixSeed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b) {
  return MixSeed(MixSeed(MixSeed(master) ^ a) ^ b);
}

}  // namespace satpath
