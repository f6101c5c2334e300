// SPDX-License-Identifier: Apache-2.0
//
// Frank-Wolfe ascent over a product of spherical caps
//   C_cap = { x : ||x|| = 1, x . e_z >= cos(theta_max) }.
//
// Each iteration projects the ambient gradient onto the tangent plane of every
// boresight, maximizes the linearization over the cap in closed form, and
// moves along d = s - f with f+ = (f + rho d) / ||f + rho d||, where rho is
// chosen by Armijo backtracking on the sufficient-increase test
//   R(f+) >= R(f) + c_A * rho * gap,   gap = sum <T g, d> >= 0.

#ifndef RAOPT_ORIENT_FW_HPP
#define RAOPT_ORIENT_FW_HPP

#include "raopt/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace raopt {

/// (I - f f^T) g.
Vec3 tangent_project(const Vec3 &f, const Vec3 &g);

/// Exact maximizer of <tg, x> over the cap. Returns f when ||tg|| < 1e-14;
/// the rim point [sin(theta_max) * u, cos(theta_max)] with u = [1, 0] when the
/// normalized tangent gradient points straight down.
Vec3 cap_oracle(const Vec3 &f, const Vec3 &tg, double theta_max);

/// sum_j <tg_j, d_j>.
double fw_gap(std::span<const Vec3> tangent_gradients, std::span<const Vec3> directions);

/// normalize(f + rho d).
Vec3 fw_update(const Vec3 &f, const Vec3 &d, double rho);

struct ArmijoParams {
  double c_a = 0.1;
  double beta = 0.5;
  double rho_min = 1e-8;
};

struct FwParams {
  double tol = 1e-6; // relative objective change
  int max_iter = 200;
  ArmijoParams armijo;
  bool record_history = false; // keep every accepted iterate in FwResult::history
};

/// Linearization data at one iterate.
struct FwDirection {
  std::vector<Vec3> tangent_gradient;
  std::vector<Vec3> target; // oracle outputs s
  std::vector<Vec3> direction; // s - f
  double gap = 0.0;
};

FwDirection fw_direction(const OrientationSet &F, std::span<const Vec3> gradient, double theta_max);

struct FwIterate {
  OrientationSet orientations;
  double gap = 0.0;
  double step = 0.0;
  double wsr = 0.0;      // objective at `orientations`
  double wsr_prev = 0.0; // objective before the step
  bool accepted = false;
  bool stalled = false;  // gap > 0 but no step >= rho_min passed the test
};

using OrientationObjective = std::function<double(const OrientationSet &)>;
using OrientationGradient = std::function<std::vector<Vec3>(const OrientationSet &)>;

/// Backtracks rho over {1, beta, beta^2, ...}. A zero gap returns the input
/// unchanged and accepted (the test holds with equality).
FwIterate armijo_fw_step(const OrientationObjective &objective, const OrientationSet &F, double value,
                         const FwDirection &dir, const ArmijoParams &params);

struct FwTraceEntry {
  int iteration = 0;
  double wsr = 0.0;
  double gap = 0.0;
  double step = 0.0;
  double wsr_prev = 0.0;
  bool accepted = false;
};

struct FwResult {
  OrientationSet orientations;
  double wsr = 0.0;
  double initial_wsr = 0.0;
  std::vector<FwTraceEntry> trace; // one entry per iteration, at most max_iter
  int iterations = 0;
  bool stalled = false;
  bool stationary = false;
  std::vector<OrientationSet> history; // accepted iterates, when requested
};

/// Frank-Wolfe loop with Armijo steps from a feasible starting point.
FwResult optimize_orientations(const OrientationObjective &objective, const OrientationGradient &gradient,
                               const OrientationSet &initial, double theta_max, const FwParams &params = {});

} // namespace raopt

#endif // RAOPT_ORIENT_FW_HPP
