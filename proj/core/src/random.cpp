// SPDX-License-Identifier: Apache-2.0

#include "raopt/random.hpp"

namespace raopt {

std::size_t Rng::categorical(std::span<const double> pmf) {
  const double u = canonical();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] <= 0.0)
      continue;
    acc += pmf[i];
    last_positive = i;
    if (u < acc)
      return i;
  }
  // u landed in the rounding slack above the accumulated mass.
  return last_positive;
}

} // namespace raopt
