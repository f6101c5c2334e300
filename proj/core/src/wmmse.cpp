// SPDX-License-Identifier: Apache-2.0

#include "raopt/wmmse.hpp"

#include "raopt/linear_bf.hpp"
#include "raopt/metrics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace raopt {

namespace {

constexpr int kBisectionIters = 200;
constexpr double kBisectionRelTol = 1e-12;
// Eigenvalues below this fraction of the largest are treated as exact zeros.
constexpr double kNullEigenRatio = 1e-13;

} // namespace

PowerConstrainedSolution solve_power_constrained(const CMat &A, const CVec &b, double budget) {
  const Eigen::Index M = b.size();
  require(A.rows() == M && A.cols() == M, "system matrix does not match the right-hand side");
  PowerConstrainedSolution sol{CVec::Zero(M), 0.0};
  if (b.squaredNorm() == 0.0 || !(budget > 0.0))
    return sol;

  Eigen::SelfAdjointEigenSolver<CMat> es(A);
  const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  const CMat &U = es.eigenvectors();
  const CVec c = U.adjoint() * b;
  const Eigen::VectorXd c2 = c.cwiseAbs2();

  const double lmax = lambda.maxCoeff();
  const double null_floor = kNullEigenRatio * lmax;
  // b's share in the numerical null space; it is only reachable for mu > 0.
  double null_energy = 0.0;
  for (Eigen::Index i = 0; i < M; ++i)
    if (lambda(i) <= null_floor)
      null_energy += c2(i);

  auto norm2 = [&](double mu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < M; ++i) {
      const double denom = lambda(i) + mu;
      if (denom > 0.0)
        s += c2(i) / (denom * denom);
    }
    return s;
  };
  auto assemble = [&](double mu) {
    CVec y(M);
    for (Eigen::Index i = 0; i < M; ++i) {
      const double denom = lambda(i) + mu;
      y(i) = (mu == 0.0 && lambda(i) <= null_floor) ? cplx{0.0, 0.0} : c(i) / denom;
    }
    return CVec(U * y);
  };

  if (null_energy <= 1e-24 * c2.sum()) {
    double unconstrained = 0.0;
    for (Eigen::Index i = 0; i < M; ++i)
      if (lambda(i) > null_floor)
        unconstrained += c2(i) / (lambda(i) * lambda(i));
    if (unconstrained <= budget) {
      sol.w = assemble(0.0);
      return sol;
    }
  }

  // ||w(mu)||^2 is strictly decreasing in mu > 0.
  double lo = 0.0;
  double hi = 1.0;
  while (norm2(hi) > budget && hi < 1e300)
    hi *= 2.0;
  for (int it = 0; it < kBisectionIters; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= kBisectionRelTol * hi)
      break;
    if (norm2(mid) > budget)
      lo = mid;
    else
      hi = mid;
  }
  sol.mu = hi; // feasible side of the bracket
  sol.w = assemble(hi);
  return sol;
}

std::vector<cplx> update_u(const ChannelTensor &channels, std::span<const CVec> w, std::span<const double> noise) {
  const std::size_t K = channels.K;
  std::vector<cplx> u(K);
  for (std::size_t k = 0; k < K; ++k) {
    double total = noise[k];
    for (std::size_t n = 0; n < K; ++n)
      total += std::norm(channels(n, k).dot(w[n]));
    u[k] = channels(k, k).dot(w[k]) / total;
  }
  return u;
}

std::vector<double> mse(const ChannelTensor &channels, std::span<const CVec> w, std::span<const cplx> u,
                        std::span<const double> noise) {
  const std::size_t K = channels.K;
  std::vector<double> e(K);
  for (std::size_t k = 0; k < K; ++k) {
    const cplx uc = std::conj(u[k]);
    double acc = std::norm(uc * channels(k, k).dot(w[k]) - 1.0);
    for (std::size_t n = 0; n < K; ++n)
      if (n != k)
        acc += std::norm(uc * channels(n, k).dot(w[n]));
    acc += std::norm(u[k]) * noise[k];
    e[k] = acc;
  }
  return e;
}

std::vector<double> update_v(std::span<const double> e) {
  std::vector<double> v(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    require(e[k] > 0.0, "MSE must be positive");
    v[k] = 1.0 / e[k];
  }
  return v;
}

BeamformerSet update_w(const ChannelTensor &channels, std::span<const cplx> u, std::span<const double> v,
                       std::span<const double> weights, std::span<const double> budgets, std::vector<double> *mu_out) {
  const std::size_t K = channels.K;
  const auto M = static_cast<Eigen::Index>(channels.M);
  BeamformerSet out;
  out.budgets.assign(budgets.begin(), budgets.end());
  out.w.reserve(K);
  if (mu_out)
    mu_out->assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    CMat A = CMat::Zero(M, M);
    for (std::size_t i = 0; i < K; ++i) {
      const double c = weights[i] * v[i] * std::norm(u[i]);
      if (c != 0.0)
        A.selfadjointView<Eigen::Lower>().rankUpdate(channels(k, i), c);
    }
    A = A.selfadjointView<Eigen::Lower>();
    const CVec b = (weights[k] * v[k] * std::conj(u[k])) * channels(k, k);
    PowerConstrainedSolution sol = solve_power_constrained(A, b, budgets[k]);
    if (mu_out)
      (*mu_out)[k] = sol.mu;
    out.w.push_back(std::move(sol.w));
  }
  return out;
}

WmmseState wmmse_solve(const ChannelTensor &channels, std::span<const double> noise, std::span<const double> weights,
                       std::span<const double> budgets, const WmmseParams &params,
                       const std::optional<BeamformerSet> &warm_start) {
  require(budgets.size() == channels.K, "budget vector does not match K");
  WmmseState st;
  st.w = warm_start ? *warm_start : mrt(channels, budgets).bf;
  st.w.budgets.assign(budgets.begin(), budgets.end());

  double current = weighted_sum_rate(channels, st.w.w, noise, weights);
  st.objective_trace.push_back(current);
  double best = current;
  BeamformerSet best_w = st.w;

  for (int it = 0; it < params.max_iter; ++it) {
    st.u = update_u(channels, st.w.w, noise);
    st.v = update_v(mse(channels, st.w.w, st.u, noise));
    st.w = update_w(channels, st.u, st.v, weights, budgets, &st.mu);
    ++st.sweeps;

    const double next = weighted_sum_rate(channels, st.w.w, noise, weights);
    st.objective_trace.push_back(next);
    if (next >= best) {
      best = next;
      best_w = st.w;
    }
    const double change = std::abs(next - current);
    current = next;
    if (change <= params.tol * std::abs(current))
      break;
  }
  st.w = std::move(best_w);
  return st;
}

} // namespace raopt
