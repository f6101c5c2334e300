// SPDX-License-Identifier: Apache-2.0

#include "raopt/linear_bf.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>

namespace raopt {

namespace {

constexpr double kMaxGramCondition = 1e12;

CVec scaled_direction(const CVec &v, double budget, bool &zero) {
  const double norm = v.norm();
  zero = !(norm > 0.0);
  if (zero)
    return CVec::Zero(v.size());
  return (std::sqrt(budget) / norm) * v;
}

} // namespace

bool LinearBeamforming::flagged() const {
  for (const auto &f : flags)
    if (f.zero_channel || f.regularized)
      return true;
  return false;
}

std::vector<std::string> LinearBeamforming::diagnostics() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (flags[k].zero_channel)
      out.push_back("transmitter " + std::to_string(k + 1) + ": zero effective channel, beamformer set to zero");
    if (flags[k].regularized)
      out.push_back("transmitter " + std::to_string(k + 1) + ": ill-conditioned cross-link Gram matrix, ridge added");
  }
  return out;
}

LinearBeamforming mrt(const ChannelTensor &channels, std::span<const double> budgets) {
  require(budgets.size() == channels.K, "budget vector does not match K");
  LinearBeamforming out;
  out.bf.budgets.assign(budgets.begin(), budgets.end());
  out.flags.resize(channels.K);
  for (std::size_t k = 0; k < channels.K; ++k)
    out.bf.w.push_back(scaled_direction(channels(k, k), budgets[k], out.flags[k].zero_channel));
  return out;
}

CMat zf_projector(const ChannelTensor &channels, std::size_t k, bool *regularized) {
  const std::size_t K = channels.K;
  const auto M = static_cast<Eigen::Index>(channels.M);
  if (regularized)
    *regularized = false;
  CMat I = CMat::Identity(M, M);
  if (K == 1)
    return I;

  CMat H(M, static_cast<Eigen::Index>(K - 1));
  Eigen::Index col = 0;
  for (std::size_t l = 0; l < K; ++l)
    if (l != k)
      H.col(col++) = channels(k, l);

  const CMat gram = H.adjoint() * H;
  Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  const bool ill = !(lmax > 0.0) || !(lmin > 0.0) || lmax / lmin > kMaxGramCondition;

  if (!ill) {
    Eigen::HouseholderQR<CMat> qr(H);
    const CMat Q1 = qr.householderQ() * CMat::Identity(M, H.cols());
    return I - Q1 * Q1.adjoint();
  }

  if (regularized)
    *regularized = true;
  const double ridge = 1e-12 * gram.trace().real() / static_cast<double>(K);
  CMat reg = gram;
  reg.diagonal().array() += ridge;
  if (!(ridge > 0.0)) // all cross links are zero: nothing to null
    return I;
  return I - H * reg.ldlt().solve(H.adjoint());
}

LinearBeamforming zf(const ChannelTensor &channels, std::span<const double> budgets) {
  require(budgets.size() == channels.K, "budget vector does not match K");
  require(channels.M >= channels.K, "zero-forcing requires M >= K");
  LinearBeamforming out;
  out.bf.budgets.assign(budgets.begin(), budgets.end());
  out.flags.resize(channels.K);
  for (std::size_t k = 0; k < channels.K; ++k) {
    const CMat P = zf_projector(channels, k, &out.flags[k].regularized);
    out.bf.w.push_back(scaled_direction(P * channels(k, k), budgets[k], out.flags[k].zero_channel));
  }
  return out;
}

} // namespace raopt
