// SPDX-License-Identifier: Apache-2.0
//
// Physical constants and seeded random 3D topologies.
//
// Geometry (meters): transmit UPA centers at [x, 20, 0] with x ~ U[0, 80];
// scatterer clusters at [x, 6, z] with x ~ U[0, 100], z ~ U[20, 40]; users at
// [x, 2, z] with x ~ U[0, 100], z ~ U[80, 100]. Cluster phases ~ U[0, 2pi).

#ifndef RAOPT_SCENE_HPP
#define RAOPT_SCENE_HPP

#include "raopt/types.hpp"

#include <cstdint>
#include <vector>

namespace raopt {

/// 10^(dbm/10), in milliwatts.
double dbm_to_linear(double dbm);

struct SceneConfig {
  std::size_t K = 4;        // transmitter-user pairs
  std::size_t Q = 6;        // scatterer clusters
  double lambda = 0.125;    // wavelength [m]
  double d = 0.25;          // element spacing [m]
  std::size_t Mx = 2;
  std::size_t My = 2;
  int p = 4;                // directivity factor
  double theta_max = kPi / 3.0;
  // Per-user / per-transmitter values; a single entry is broadcast to all K.
  std::vector<double> noise_dbm{-80.0};
  std::vector<double> p_max_dbm{0.0};
  std::vector<double> alpha{1.0};
  double eta_q = 0.5;       // average scattering power, used as the RCS of every cluster
  std::uint64_t seed = 1;

  std::size_t M() const { return Mx * My; }

  double noise_mw(std::size_t k) const;
  double budget_mw(std::size_t k) const;
  double weight(std::size_t k) const;

  std::vector<double> noise_mw() const;
  std::vector<double> budgets_mw() const;
  std::vector<double> weights() const;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

struct Topology {
  std::vector<Vec3> tx_centers;        // K
  std::vector<Vec3> element_positions; // K*M, flat index k*M + m
  std::vector<Vec3> users;             // K
  std::vector<Vec3> clusters;          // Q
  std::vector<double> rcs;             // Q
  std::vector<double> phases;          // Q, in [0, 2pi)

  std::size_t K() const { return tx_centers.size(); }
  std::size_t M() const { return tx_centers.empty() ? 0 : element_positions.size() / tx_centers.size(); }
  std::size_t Q() const { return clusters.size(); }
  const Vec3 &element(std::size_t k, std::size_t m) const { return element_positions[k * M() + m]; }

  bool operator==(const Topology &) const = default;
};

/// UPA element coordinates for every transmitter, flat index k*M + m. Element
/// m has column m % Mx and row m / Mx; the array is centered on its tx center
/// and lies parallel to the x-y plane.
std::vector<Vec3> element_positions(const SceneConfig &config, const std::vector<Vec3> &tx_centers);

/// Draw order on the stream seeded with config.seed: tx x (K draws), users
/// (x, z per user), clusters (x, z per cluster), cluster phases (Q draws).
Topology generate_topology(const SceneConfig &config);

} // namespace raopt

#endif // RAOPT_SCENE_HPP
