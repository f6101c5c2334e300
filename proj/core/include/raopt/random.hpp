// SPDX-License-Identifier: Apache-2.0

#ifndef RAOPT_RANDOM_HPP
#define RAOPT_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>

namespace raopt {

/// Seeded random stream used for topologies and stochastic search.
///
/// Engine: std::mt19937_64 seeded with the raw 64-bit seed. Uniform reals use
/// the top 53 bits of one engine output, u = (x >> 11) * 2^-53 in [0, 1), so
/// draws do not depend on the standard library's distribution classes and are
/// reproducible across toolchains. Per-trial substreams use seed = base + trial.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

  /// Inverse-CDF draw from a probability mass function.
  std::size_t categorical(std::span<const double> pmf);

private:
  std::mt19937_64 engine_;
};

} // namespace raopt

#endif // RAOPT_RANDOM_HPP
