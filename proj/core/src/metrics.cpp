// SPDX-License-Identifier: Apache-2.0

#include "raopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <sstream>

namespace raopt {

double BeamformerSet::max_budget_violation() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w.size(); ++k)
    worst = std::max(worst, w[k].squaredNorm() - budgets.at(k));
  return worst;
}

namespace {

void check_dims(const ChannelTensor &channels, std::span<const CVec> w, std::span<const double> noise,
                std::span<const double> weights) {
  const std::size_t K = channels.K;
  require(w.size() == K, "beamformer count does not match K");
  require(noise.size() == K, "noise vector does not match K");
  require(weights.size() == K, "weight vector does not match K");
  for (const CVec &wk : w)
    require(static_cast<std::size_t>(wk.size()) == channels.M, "beamformer length does not match M");
  for (double n : noise)
    require(n > 0.0, "noise power must be > 0");
}

} // namespace

RateReport rates(const ChannelTensor &channels, std::span<const CVec> w, std::span<const double> noise,
                 std::span<const double> weights) {
  check_dims(channels, w, noise, weights);
  const std::size_t K = channels.K;
  RateReport rep;
  rep.signal.resize(K);
  rep.interference_plus_noise.resize(K);
  rep.rate.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    rep.signal[k] = std::norm(channels(k, k).dot(w[k])); // dot() conjugates the first argument
    double interference = 0.0;
    for (std::size_t n = 0; n < K; ++n)
      if (n != k)
        interference += std::norm(channels(n, k).dot(w[n]));
    rep.interference_plus_noise[k] = interference + noise[k];
    rep.rate[k] = std::log2(1.0 + rep.signal[k] / rep.interference_plus_noise[k]);
    rep.wsr += weights[k] * rep.rate[k];
  }
  return rep;
}

double weighted_sum_rate(const ChannelTensor &channels, std::span<const CVec> w, std::span<const double> noise,
                         std::span<const double> weights) {
  return rates(channels, w, noise, weights).wsr;
}

std::vector<Vec3> wsr_orientation_gradient(const ChannelTensor &channels, std::span<const CVec> w,
                                           std::span<const double> noise, std::span<const double> weights) {
  require(channels.has_gradient(), "channel tensor carries no orientation gradients");
  const RateReport rep = rates(channels, w, noise, weights);
  const std::size_t K = channels.K;
  const std::size_t M = channels.M;

  // Per-user scalar factors of the chain rule.
  std::vector<double> desired(K), leak(K);
  for (std::size_t l = 0; l < K; ++l) {
    const double S = rep.signal[l];
    const double I = rep.interference_plus_noise[l];
    desired[l] = weights[l] / (I + S);
    leak[l] = weights[l] * S / (I * (I + S));
  }

  const double scale = 2.0 / std::log(2.0);
  std::vector<Vec3> g(K * M, Vec3::Zero());
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<cplx> proj(K); // h_{k,l}^H w_k
    for (std::size_t l = 0; l < K; ++l)
      proj[l] = channels(k, l).dot(w[k]);
    for (std::size_t m = 0; m < M; ++m) {
      const cplx wc = std::conj(w[k](static_cast<Eigen::Index>(m)));
      if (wc == cplx{0.0, 0.0})
        continue;
      CVec3 acc = (desired[k] * proj[k]) * channels.gradient(k, m, k);
      for (std::size_t l = 0; l < K; ++l)
        if (l != k)
          acc -= (leak[l] * proj[l]) * channels.gradient(k, m, l);
      g[k * M + m] = scale * (wc * acc).real();
    }
  }
  return g;
}

std::string RateReport::csv_header(std::size_t K) {
  std::ostringstream os;
  for (std::size_t k = 0; k < K; ++k)
    os << "rate_" << (k + 1) << ',';
  os << "wsr";
  return os.str();
}

std::string RateReport::csv_row() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(9);
  for (double r : rate)
    os << r << ',';
  os << wsr;
  return os.str();
}

} // namespace raopt
