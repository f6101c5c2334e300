// SPDX-License-Identifier: Apache-2.0
//
// Closed-form maximum-ratio (MRT) and zero-forcing (ZF) beamformers.

#ifndef RAOPT_LINEAR_BF_HPP
#define RAOPT_LINEAR_BF_HPP

#include "raopt/channel.hpp"
#include "raopt/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace raopt {

struct BeamformerFlags {
  bool zero_channel = false; // desired (or projected desired) channel vanished; w_k = 0
  bool regularized = false;  // ZF Gram matrix was ill-conditioned and got a ridge
};

struct LinearBeamforming {
  BeamformerSet bf;
  std::vector<BeamformerFlags> flags;

  bool flagged() const;
  std::vector<std::string> diagnostics() const;
};

/// w_k = sqrt(P_k) h_kk / ||h_kk||.
LinearBeamforming mrt(const ChannelTensor &channels, std::span<const double> budgets);

/// Orthogonal projector onto the null space of the cross-link channels
/// H_{-k} = [h_{k,l}]_{l != k}. The range of H_{-k} is taken from a thin
/// Householder QR. When the Gram matrix H^H H has condition number above 1e12
/// the projector is instead I - H (G + ridge I)^{-1} H^H with
/// ridge = 1e-12 trace(G) / K, and `regularized` is set.
CMat zf_projector(const ChannelTensor &channels, std::size_t k, bool *regularized = nullptr);

/// w_k = sqrt(P_k) P_k^perp h_kk / ||P_k^perp h_kk||. Requires M >= K.
LinearBeamforming zf(const ChannelTensor &channels, std::span<const double> budgets);

} // namespace raopt

#endif // RAOPT_LINEAR_BF_HPP
