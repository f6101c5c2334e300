// SPDX-License-Identifier: Apache-2.0

#include "raopt/orient_fw.hpp"

#include <cmath>

namespace raopt {

namespace {

constexpr double kStationaryNorm = 1e-14;

} // namespace

Vec3 tangent_project(const Vec3 &f, const Vec3 &g) { return g - f * f.dot(g); }

Vec3 cap_oracle(const Vec3 &f, const Vec3 &tg, double theta_max) {
  const double norm = tg.norm();
  if (norm < kStationaryNorm)
    return f;
  const Vec3 ghat = tg / norm;
  const double cos_max = std::cos(theta_max);
  if (ghat.z() >= cos_max)
    return ghat;
  const double sin_max = std::sqrt(1.0 - cos_max * cos_max);
  const double xy = std::hypot(ghat.x(), ghat.y());
  if (xy > 0.0)
    return {sin_max * ghat.x() / xy, sin_max * ghat.y() / xy, cos_max};
  return {sin_max, 0.0, cos_max};
}

double fw_gap(std::span<const Vec3> tangent_gradients, std::span<const Vec3> directions) {
  require(tangent_gradients.size() == directions.size(), "gradient and direction counts differ");
  double gap = 0.0;
  for (std::size_t j = 0; j < directions.size(); ++j)
    gap += tangent_gradients[j].dot(directions[j]);
  return gap;
}

Vec3 fw_update(const Vec3 &f, const Vec3 &d, double rho) {
  const Vec3 x = f + rho * d;
  return x / x.norm();
}

FwDirection fw_direction(const OrientationSet &F, std::span<const Vec3> gradient, double theta_max) {
  require(gradient.size() == F.size(), "gradient count does not match the orientation set");
  FwDirection dir;
  dir.tangent_gradient.resize(F.size());
  dir.target.resize(F.size());
  dir.direction.resize(F.size());
  for (std::size_t j = 0; j < F.size(); ++j) {
    dir.tangent_gradient[j] = tangent_project(F[j], gradient[j]);
    dir.target[j] = cap_oracle(F[j], dir.tangent_gradient[j], theta_max);
    dir.direction[j] = dir.target[j] - F[j];
  }
  dir.gap = fw_gap(dir.tangent_gradient, dir.direction);
  return dir;
}

FwIterate armijo_fw_step(const OrientationObjective &objective, const OrientationSet &F, double value,
                         const FwDirection &dir, const ArmijoParams &params) {
  FwIterate it;
  it.orientations = F;
  it.gap = dir.gap;
  it.wsr = value;
  it.wsr_prev = value;
  if (!(dir.gap > 0.0)) {
    it.accepted = true;
    return it;
  }
  for (double rho = 1.0; rho >= params.rho_min; rho *= params.beta) {
    OrientationSet trial = F;
    for (std::size_t j = 0; j < F.size(); ++j)
      trial[j] = fw_update(F[j], dir.direction[j], rho);
    const double trial_value = objective(trial);
    if (trial_value >= value + params.c_a * rho * dir.gap) {
      it.orientations = std::move(trial);
      it.wsr = trial_value;
      it.step = rho;
      it.accepted = true;
      return it;
    }
  }
  it.stalled = true;
  return it;
}

FwResult optimize_orientations(const OrientationObjective &objective, const OrientationGradient &gradient,
                               const OrientationSet &initial, double theta_max, const FwParams &params) {
  FwResult res;
  res.orientations = initial;
  res.wsr = objective(initial);
  res.initial_wsr = res.wsr;

  for (int t = 0; t < params.max_iter; ++t) {
    const std::vector<Vec3> g = gradient(res.orientations);
    const FwDirection dir = fw_direction(res.orientations, g, theta_max);
    FwIterate step = armijo_fw_step(objective, res.orientations, res.wsr, dir, params.armijo);

    ++res.iterations;
    res.trace.push_back({t + 1, step.wsr, step.gap, step.step, step.wsr_prev, step.accepted});
    if (!(dir.gap > 0.0)) {
      res.stationary = true;
      break;
    }
    if (step.stalled) {
      res.stalled = true;
      break;
    }
    const double prev = res.wsr;
    res.orientations = std::move(step.orientations);
    res.wsr = step.wsr;
    if (params.record_history)
      res.history.push_back(res.orientations);
    if (std::abs(res.wsr - prev) <= params.tol * std::abs(prev))
      break;
  }
  return res;
}

} // namespace raopt
