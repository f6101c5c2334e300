// SPDX-License-Identifier: Apache-2.0
//
// Joint beamforming / orientation drivers built on the Frank-Wolfe machinery:
//  - ao_solve alternates WMMSE (orientations fixed) with Frank-Wolfe over the
//    orientations (beamformers fixed);
//  - optimize_orientations_mrt / _zf run Frank-Wolfe on the orientations alone,
//    recomputing MRT or ZF beamformers from the current channels at every
//    objective evaluation, with tangent-space central-difference gradients.

#ifndef RAOPT_AO_HPP
#define RAOPT_AO_HPP

#include "raopt/channel.hpp"
#include "raopt/orient_fw.hpp"
#include "raopt/scene.hpp"
#include "raopt/wmmse.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace raopt {

struct AoParams {
  WmmseParams wmmse;
  FwParams fw;
  double tol = 1e-6; // relative wsr change between outer iterations
  int max_iter = 50;
};

struct AoTraceEntry {
  int iteration = 0;
  double wsr = 0.0;        // after the orientation step of this outer iteration
  double wsr_wmmse = 0.0;  // after the beamforming step
  double gap = 0.0;        // first Frank-Wolfe gap of the orientation step
  double step = 0.0;       // first accepted Frank-Wolfe step size
  int wmmse_sweeps = 0;
  int fw_iterations = 0;
};

struct AoResult {
  BeamformerSet beamformers;
  OrientationSet orientations;
  double wsr = 0.0;
  double initial_wsr = 0.0;
  std::vector<AoTraceEntry> trace;
  // Every Frank-Wolfe step taken, across all outer iterations.
  std::vector<FwTraceEntry> fw_steps;
  // Filled only with record_history: the start point and every accepted
  // Frank-Wolfe iterate, and the WMMSE output of every outer iteration.
  std::vector<OrientationSet> orientation_history;
  std::vector<BeamformerSet> beamformer_history;
  std::vector<std::vector<double>> wmmse_traces;
  int iterations = 0;
};

/// Starts from all boresights at +z (or `initial`) with full-power MRT.
/// The loop ends early when an orientation step leaves every boresight
/// unchanged, since the following beamforming step would repeat the last one.
AoResult ao_solve(const SceneConfig &config, const Topology &topology, const AoParams &params = {},
                  const std::optional<OrientationSet> &initial = std::nullopt, bool record_history = false);

/// Objective wrapper: wsr of fixed beamformers as a function of the orientations.
struct FixedBeamformerObjective {
  const ChannelModel *model;
  const BeamformerSet *beamformers;
  std::vector<double> noise;
  std::vector<double> weights;

  double value(const OrientationSet &F) const;
  std::vector<Vec3> gradient(const OrientationSet &F) const;
};

enum class LinearScheme { mrt, zf };

struct LinearRaParams {
  FwParams fw;
  double fd_step = 1e-6;
};

struct LinearRaResult {
  OrientationSet orientations;
  BeamformerSet beamformers;
  double wsr = 0.0;
  double initial_wsr = 0.0;
  FwResult fw;
};

/// wsr of MRT / ZF beamformers recomputed from the channels at F.
double linear_scheme_wsr(const ChannelModel &model, const OrientationSet &F, LinearScheme scheme,
                         const SceneConfig &config);

/// Tangent-basis central differences of an orientation objective, returned as
/// tangent vectors g_j = sum_i D_i t_i (already orthogonal to f_j).
std::vector<Vec3> finite_difference_gradient(const OrientationObjective &objective, const OrientationSet &F,
                                             double step);

/// Orthonormal basis {t1, t2} of the tangent plane at unit f.
std::pair<Vec3, Vec3> tangent_basis(const Vec3 &f);

LinearRaResult optimize_orientations_linear(const SceneConfig &config, const Topology &topology, LinearScheme scheme,
                                            const LinearRaParams &params = {},
                                            const std::optional<OrientationSet> &initial = std::nullopt);

inline LinearRaResult optimize_orientations_mrt(const SceneConfig &config, const Topology &topology,
                                                const LinearRaParams &params = {}) {
  return optimize_orientations_linear(config, topology, LinearScheme::mrt, params);
}

inline LinearRaResult optimize_orientations_zf(const SceneConfig &config, const Topology &topology,
                                               const LinearRaParams &params = {}) {
  return optimize_orientations_linear(config, topology, LinearScheme::zf, params);
}

} // namespace raopt

#endif // RAOPT_AO_HPP
