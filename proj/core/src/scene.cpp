// SPDX-License-Identifier: Apache-2.0

#include "raopt/scene.hpp"

#include "raopt/random.hpp"

#include <cmath>
#include <string>

namespace raopt {

double dbm_to_linear(double dbm) { return std::pow(10.0, dbm / 10.0); }

namespace {

double per_user(const std::vector<double> &v, std::size_t k) {
  return v.size() == 1 ? v.front() : v.at(k);
}

void check_per_user(const std::vector<double> &v, std::size_t K, const char *name) {
  if (v.size() != 1 && v.size() != K)
    throw std::invalid_argument(std::string(name) + " must have 1 or K entries");
}

} // namespace

double SceneConfig::noise_mw(std::size_t k) const { return dbm_to_linear(per_user(noise_dbm, k)); }
double SceneConfig::budget_mw(std::size_t k) const { return dbm_to_linear(per_user(p_max_dbm, k)); }
double SceneConfig::weight(std::size_t k) const { return per_user(alpha, k); }

std::vector<double> SceneConfig::noise_mw() const {
  std::vector<double> out(K);
  for (std::size_t k = 0; k < K; ++k)
    out[k] = noise_mw(k);
  return out;
}

std::vector<double> SceneConfig::budgets_mw() const {
  std::vector<double> out(K);
  for (std::size_t k = 0; k < K; ++k)
    out[k] = budget_mw(k);
  return out;
}

std::vector<double> SceneConfig::weights() const {
  std::vector<double> out(K);
  for (std::size_t k = 0; k < K; ++k)
    out[k] = weight(k);
  return out;
}

void SceneConfig::validate() const {
  require(K >= 1, "K must be >= 1");
  require(Mx >= 1 && My >= 1, "Mx and My must be >= 1");
  require(lambda > 0.0 && std::isfinite(lambda), "lambda must be > 0");
  require(d > 0.0 && std::isfinite(d), "d must be > 0");
  require(p >= 0, "p must be >= 0");
  require(theta_max >= 0.0 && theta_max <= kPi / 2.0, "theta_max must lie in [0, pi/2]");
  require(eta_q >= 0.0, "eta_q must be >= 0");
  check_per_user(noise_dbm, K, "noise_dbm");
  check_per_user(p_max_dbm, K, "p_max_dbm");
  check_per_user(alpha, K, "alpha");
  for (double a : alpha)
    require(a >= 0.0, "alpha entries must be >= 0");
  for (double n : noise_dbm)
    require(std::isfinite(n), "noise_dbm entries must be finite");
  for (double pw : p_max_dbm)
    require(std::isfinite(pw), "p_max_dbm entries must be finite");
}

std::vector<Vec3> element_positions(const SceneConfig &config, const std::vector<Vec3> &tx_centers) {
  const std::size_t M = config.M();
  const double cx = (static_cast<double>(config.Mx) - 1.0) / 2.0;
  const double cy = (static_cast<double>(config.My) - 1.0) / 2.0;
  std::vector<Vec3> out;
  out.reserve(tx_centers.size() * M);
  for (const Vec3 &center : tx_centers) {
    for (std::size_t m = 0; m < M; ++m) {
      const double col = static_cast<double>(m % config.Mx) - cx;
      const double row = static_cast<double>(m / config.Mx) - cy;
      out.push_back(center + config.d * Vec3(col, row, 0.0));
    }
  }
  return out;
}

Topology generate_topology(const SceneConfig &config) {
  config.validate();
  Rng rng(config.seed);
  Topology topo;

  topo.tx_centers.reserve(config.K);
  for (std::size_t k = 0; k < config.K; ++k)
    topo.tx_centers.emplace_back(rng.uniform(0.0, 80.0), 20.0, 0.0);

  topo.users.reserve(config.K);
  for (std::size_t k = 0; k < config.K; ++k) {
    const double x = rng.uniform(0.0, 100.0);
    const double z = rng.uniform(80.0, 100.0);
    topo.users.emplace_back(x, 2.0, z);
  }

  topo.clusters.reserve(config.Q);
  for (std::size_t q = 0; q < config.Q; ++q) {
    const double x = rng.uniform(0.0, 100.0);
    const double z = rng.uniform(20.0, 40.0);
    topo.clusters.emplace_back(x, 6.0, z);
  }

  topo.phases.reserve(config.Q);
  for (std::size_t q = 0; q < config.Q; ++q) {
    double chi = rng.uniform(0.0, 2.0 * kPi);
    if (chi >= 2.0 * kPi) // rounding at the top of the interval
      chi = 0.0;
    topo.phases.push_back(chi);
  }
  topo.rcs.assign(config.Q, config.eta_q);

  topo.element_positions = element_positions(config, topo.tx_centers);
  return topo;
}

} // namespace raopt
