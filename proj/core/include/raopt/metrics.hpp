// SPDX-License-Identifier: Apache-2.0

#ifndef RAOPT_METRICS_HPP
#define RAOPT_METRICS_HPP

#include "raopt/channel.hpp"
#include "raopt/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace raopt {

struct RateReport {
  std::vector<double> signal;                  // S_k = |h_kk^H w_k|^2
  std::vector<double> interference_plus_noise; // I_k = sum_{n != k} |h_nk^H w_n|^2 + noise_k
  std::vector<double> rate;                    // log2(1 + S_k / I_k), bps/Hz
  double wsr = 0.0;                            // sum_k alpha_k R_k

  /// "rate_1,...,rate_K,wsr" with 9 fixed decimals.
  std::string csv_row() const;
  static std::string csv_header(std::size_t K);
};

/// SINR-based per-user rates and the weighted sum-rate.
RateReport rates(const ChannelTensor &channels, std::span<const CVec> w, std::span<const double> noise,
                 std::span<const double> weights);

inline RateReport rates(const ChannelTensor &channels, const BeamformerSet &bf, std::span<const double> noise,
                        std::span<const double> weights) {
  return rates(channels, bf.w, noise, weights);
}

double weighted_sum_rate(const ChannelTensor &channels, std::span<const CVec> w, std::span<const double> noise,
                         std::span<const double> weights);

/// Ambient R^3 gradient of the weighted sum-rate with respect to every boresight
/// f_{k,m} (flat index k*M + m), beamformers held fixed. `channels` must carry
/// gradients. Tangent projection is left to the caller.
std::vector<Vec3> wsr_orientation_gradient(const ChannelTensor &channels, std::span<const CVec> w,
                                           std::span<const double> noise, std::span<const double> weights);

} // namespace raopt

#endif // RAOPT_METRICS_HPP
