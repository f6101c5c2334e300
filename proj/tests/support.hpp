// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures for unit and acceptance tests.

#ifndef RAOPT_TEST_SUPPORT_HPP
#define RAOPT_TEST_SUPPORT_HPP

#include "raopt/channel.hpp"
#include "raopt/random.hpp"
#include "raopt/scene.hpp"

#include <cmath>

namespace raopt::testing {

inline Vec3 random_unit(Rng &rng) {
  for (;;) {
    const Vec3 v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0)
      return v / n;
  }
}

/// Uniform on the cap {x : x_z >= cos(theta_max)}.
inline Vec3 random_cap_point(Rng &rng, double theta_max) {
  const double z = 1.0 - rng.canonical() * (1.0 - std::cos(theta_max));
  const double phi = rng.uniform(-kPi, kPi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(s * std::cos(phi), s * std::sin(phi), z);
}

inline OrientationSet random_orientations(Rng &rng, std::size_t K, std::size_t M, double theta_max) {
  OrientationSet F(K, M);
  for (std::size_t j = 0; j < F.size(); ++j)
    F[j] = random_cap_point(rng, theta_max);
  return F;
}

inline CVec random_cvec(Rng &rng, Eigen::Index n, double scale = 1.0) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = scale * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return v;
}

/// Smallest clipping argument f . u over every direct and first-hop path.
inline double min_clip_argument(const Topology &topo, const OrientationSet &F) {
  double lo = 1.0;
  for (std::size_t k = 0; k < topo.K(); ++k)
    for (std::size_t m = 0; m < topo.M(); ++m) {
      const Vec3 &t = topo.element(k, m);
      for (const Vec3 &u : topo.users)
        lo = std::min(lo, F(k, m).dot((u - t).normalized()));
      for (const Vec3 &s : topo.clusters)
        lo = std::min(lo, F(k, m).dot((s - t).normalized()));
    }
  return lo;
}

/// Topology with hand-placed points, no randomness.
inline Topology make_topology(const SceneConfig &config, std::vector<Vec3> centers, std::vector<Vec3> users,
                              std::vector<Vec3> clusters = {}, std::vector<double> phases = {}) {
  Topology t;
  t.tx_centers = std::move(centers);
  t.element_positions = element_positions(config, t.tx_centers);
  t.users = std::move(users);
  t.clusters = std::move(clusters);
  t.rcs.assign(t.clusters.size(), config.eta_q);
  t.phases = phases.empty() ? std::vector<double>(t.clusters.size(), 0.0) : std::move(phases);
  return t;
}

} // namespace raopt::testing

#endif // RAOPT_TEST_SUPPORT_HPP
