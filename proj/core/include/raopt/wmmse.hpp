// SPDX-License-Identifier: Apache-2.0
//
// Weighted MMSE solver for the fixed-orientation beamforming subproblem.
//
// One sweep applies the closed-form block updates
//   u_k = h_kk^H w_k / (sum_n |h_nk^H w_n|^2 + noise_k)
//   v_k = 1 / e_k
//   w_k = (sum_i alpha_i v_i |u_i|^2 h_ki h_ki^H + mu_k I)^{-1} alpha_k v_k conj(u_k) h_kk
// where mu_k >= 0 is the multiplier of the per-transmitter power budget, found
// by bisection whenever the unconstrained minimizer exceeds the budget. Each
// sweep leaves the weighted sum-rate nondecreasing.

#ifndef RAOPT_WMMSE_HPP
#define RAOPT_WMMSE_HPP

#include "raopt/channel.hpp"
#include "raopt/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace raopt {

struct WmmseParams {
  double tol = 1e-6; // relative wsr change between sweeps
  int max_iter = 200;
};

struct WmmseState {
  std::vector<cplx> u;
  std::vector<double> v;
  std::vector<double> mu;
  BeamformerSet w;
  std::vector<double> objective_trace; // wsr before the first sweep, then after each sweep
  int sweeps = 0;

  double wsr() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

/// Solution of min_w w^H A w - 2 Re(b^H w) s.t. ||w||^2 <= budget.
struct PowerConstrainedSolution {
  CVec w;
  double mu = 0.0;
};

/// A must be Hermitian positive semidefinite. mu = 0 when the (minimum-norm)
/// unconstrained solution fits the budget; otherwise ||w(mu)||^2 = budget,
/// with mu located by bisection on the eigen-decomposed system.
PowerConstrainedSolution solve_power_constrained(const CMat &A, const CVec &b, double budget);

std::vector<cplx> update_u(const ChannelTensor &channels, std::span<const CVec> w, std::span<const double> noise);

/// e_k = |conj(u_k) h_kk^H w_k - 1|^2 + sum_{n != k} |conj(u_k) h_nk^H w_n|^2 + |u_k|^2 noise_k.
std::vector<double> mse(const ChannelTensor &channels, std::span<const CVec> w, std::span<const cplx> u,
                        std::span<const double> noise);

/// v_k = 1 / e_k. Throws std::invalid_argument for e_k <= 0.
std::vector<double> update_v(std::span<const double> e);

/// Beamformer block update; the multipliers mu_k are written to `mu_out` when given.
BeamformerSet update_w(const ChannelTensor &channels, std::span<const cplx> u, std::span<const double> v,
                       std::span<const double> weights, std::span<const double> budgets,
                       std::vector<double> *mu_out = nullptr);

/// Alternates (u, v, w) sweeps until the relative wsr change falls below
/// params.tol or params.max_iter sweeps. Starts from `warm_start` when given,
/// otherwise from full-power MRT. Returns the best iterate seen.
WmmseState wmmse_solve(const ChannelTensor &channels, std::span<const double> noise, std::span<const double> weights,
                       std::span<const double> budgets, const WmmseParams &params = {},
                       const std::optional<BeamformerSet> &warm_start = std::nullopt);

} // namespace raopt

#endif // RAOPT_WMMSE_HPP
