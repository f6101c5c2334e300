// SPDX-License-Identifier: Apache-2.0

#include "raopt/ao.hpp"

#include "raopt/linear_bf.hpp"
#include "raopt/metrics.hpp"

#include <cmath>

namespace raopt {

double FixedBeamformerObjective::value(const OrientationSet &F) const {
  return weighted_sum_rate(model->evaluate(F), beamformers->w, noise, weights);
}

std::vector<Vec3> FixedBeamformerObjective::gradient(const OrientationSet &F) const {
  return wsr_orientation_gradient(model->evaluate(F, true), beamformers->w, noise, weights);
}

AoResult ao_solve(const SceneConfig &config, const Topology &topology, const AoParams &params,
                  const std::optional<OrientationSet> &initial, bool record_history) {
  config.validate();
  const ChannelModel model(topology, config);
  const std::vector<double> noise = config.noise_mw();
  const std::vector<double> weights = config.weights();
  const std::vector<double> budgets = config.budgets_mw();

  AoResult res;
  res.orientations = initial ? *initial : OrientationSet(config.K, config.M());
  require(is_feasible(res.orientations, config.theta_max), "initial orientations are infeasible");
  ChannelTensor H = model.evaluate(res.orientations);
  res.beamformers = mrt(H, budgets).bf;
  res.wsr = weighted_sum_rate(H, res.beamformers.w, noise, weights);
  res.initial_wsr = res.wsr;
  if (record_history)
    res.orientation_history.push_back(res.orientations);

  FwParams fw_params = params.fw;
  fw_params.record_history = record_history;

  for (int t = 0; t < params.max_iter; ++t) {
    WmmseState bf = wmmse_solve(H, noise, weights, budgets, params.wmmse, res.beamformers);
    AoTraceEntry entry;
    entry.iteration = t + 1;
    // Best iterate of the solve, which can sit before the last trace entry.
    entry.wsr_wmmse = weighted_sum_rate(H, bf.w.w, noise, weights);
    entry.wmmse_sweeps = bf.sweeps;
    res.wmmse_traces.push_back(bf.objective_trace);
    res.beamformers = std::move(bf.w);
    if (record_history)
      res.beamformer_history.push_back(res.beamformers);

    FixedBeamformerObjective obj{&model, &res.beamformers, noise, weights};
    FwResult fw = optimize_orientations([&](const OrientationSet &F) { return obj.value(F); },
                                        [&](const OrientationSet &F) { return obj.gradient(F); }, res.orientations,
                                        config.theta_max, fw_params);
    if (!fw.trace.empty()) {
      entry.gap = fw.trace.front().gap;
      entry.step = fw.trace.front().step;
    }
    entry.fw_iterations = fw.iterations;
    res.fw_steps.insert(res.fw_steps.end(), fw.trace.begin(), fw.trace.end());

    const bool moved = !(fw.orientations == res.orientations);
    const double prev = res.wsr;
    if (moved) {
      res.orientations = std::move(fw.orientations);
      H = model.evaluate(res.orientations);
      res.wsr = fw.wsr;
    } else {
      res.wsr = entry.wsr_wmmse;
    }
    entry.wsr = res.wsr;
    res.trace.push_back(entry);
    ++res.iterations;
    if (record_history)
      res.orientation_history.insert(res.orientation_history.end(), fw.history.begin(), fw.history.end());

    if (!moved)
      break;
    if (std::abs(res.wsr - prev) <= params.tol * std::abs(prev))
      break;
  }
  return res;
}

double linear_scheme_wsr(const ChannelModel &model, const OrientationSet &F, LinearScheme scheme,
                         const SceneConfig &config) {
  const ChannelTensor H = model.evaluate(F);
  const std::vector<double> budgets = config.budgets_mw();
  const LinearBeamforming bf = scheme == LinearScheme::mrt ? mrt(H, budgets) : zf(H, budgets);
  return weighted_sum_rate(H, bf.bf.w, config.noise_mw(), config.weights());
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3 &f) {
  const Vec3 a = std::abs(f.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 t1 = (a - f * f.dot(a)).normalized();
  const Vec3 t2 = f.cross(t1);
  return {t1, t2};
}

std::vector<Vec3> finite_difference_gradient(const OrientationObjective &objective, const OrientationSet &F,
                                             double step) {
  std::vector<Vec3> g(F.size(), Vec3::Zero());
  OrientationSet probe = F;
  for (std::size_t j = 0; j < F.size(); ++j) {
    const auto [t1, t2] = tangent_basis(F[j]);
    for (const Vec3 &t : {t1, t2}) {
      probe[j] = (F[j] + step * t).normalized();
      const double up = objective(probe);
      probe[j] = (F[j] - step * t).normalized();
      const double down = objective(probe);
      g[j] += ((up - down) / (2.0 * step)) * t;
    }
    probe[j] = F[j];
  }
  return g;
}

LinearRaResult optimize_orientations_linear(const SceneConfig &config, const Topology &topology, LinearScheme scheme,
                                            const LinearRaParams &params, const std::optional<OrientationSet> &initial) {
  config.validate();
  if (scheme == LinearScheme::zf)
    require(config.M() >= config.K, "zero-forcing requires M >= K");
  const ChannelModel model(topology, config);
  const OrientationSet start = initial ? *initial : OrientationSet(config.K, config.M());
  require(is_feasible(start, config.theta_max), "initial orientations are infeasible");

  auto objective = [&](const OrientationSet &F) { return linear_scheme_wsr(model, F, scheme, config); };
  auto gradient = [&](const OrientationSet &F) { return finite_difference_gradient(objective, F, params.fd_step); };

  LinearRaResult res;
  res.fw = optimize_orientations(objective, gradient, start, config.theta_max, params.fw);
  res.orientations = res.fw.orientations;
  res.wsr = res.fw.wsr;
  res.initial_wsr = res.fw.initial_wsr;
  const ChannelTensor H = model.evaluate(res.orientations);
  const std::vector<double> budgets = config.budgets_mw();
  res.beamformers = (scheme == LinearScheme::mrt ? mrt(H, budgets) : zf(H, budgets)).bf;
  return res;
}

} // namespace raopt
