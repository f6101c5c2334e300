// SPDX-License-Identifier: Apache-2.0
//
// Orientation-dependent narrowband channels for directional rotatable elements.
//
// Each element radiates with the cosine power pattern
//   G(eps) = 2(2p+1) [cos eps]_+^{2p},
// so the amplitude along a unit direction u from element (k,m) is
//   sqrt(beta0 * kappa_max) / dist * [f_{k,m} . u]_+^p,   beta0 = (lambda / 4pi)^2.
// A channel entry h_{k,m,n} sums the direct path to user n and one bi-static
// hop through every scatterer cluster q (RCS sigma_q, random phase chi_q).

#ifndef RAOPT_CHANNEL_HPP
#define RAOPT_CHANNEL_HPP

#include "raopt/scene.hpp"
#include "raopt/types.hpp"

#include <vector>

namespace raopt {

/// [sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)]; theta in [0, pi/2],
/// phi in [-pi, pi). Throws std::invalid_argument outside that range.
Vec3 boresight_from_angles(double theta, double phi);

/// 2(2p+1) [cos_eps]_+^{2p}; zero for cos_eps <= 0, 2 on the front hemisphere when p == 0.
double element_gain(double cos_eps, int p);

/// [x]_+^e with the convention [x]_+^e = 0 whenever x <= 0 (including e == 0).
double clipped_pow(double x, int e);

/// Channels h_{k,n} in C^M for all (transmitter k, user n) pairs.
struct ChannelTensor {
  std::size_t K = 0;
  std::size_t M = 0;
  std::vector<CVec> h;     // index k*K + n
  std::vector<CVec3> grad; // optional, index (k*M + m)*K + n: d h_{k,m,n} / d f_{k,m}

  const CVec &operator()(std::size_t k, std::size_t n) const { return h[k * K + n]; }
  CVec &operator()(std::size_t k, std::size_t n) { return h[k * K + n]; }
  bool has_gradient() const { return !grad.empty(); }
  const CVec3 &gradient(std::size_t k, std::size_t m, std::size_t n) const { return grad[(k * M + m) * K + n]; }
};

/// Caches the orientation-independent geometry of a topology (distances, unit
/// directions, path coefficients) so channels can be re-evaluated cheaply for
/// many orientation sets.
class ChannelModel {
public:
  /// Throws std::invalid_argument when an element coincides with a user or cluster,
  /// or a cluster coincides with a user.
  ChannelModel(const Topology &topology, const SceneConfig &config);

  std::size_t K() const { return K_; }
  std::size_t M() const { return M_; }
  std::size_t Q() const { return Q_; }
  int p() const { return p_; }

  ChannelTensor los(const OrientationSet &F) const;
  ChannelTensor nlos(const OrientationSet &F) const;
  /// los + nlos; fills `grad` when with_gradient is set.
  ChannelTensor evaluate(const OrientationSet &F, bool with_gradient = false) const;
  /// Per-element orientation gradients only, index (k*M + m)*K + n.
  std::vector<CVec3> gradient(const OrientationSet &F) const;

private:
  enum Part { kLos = 1, kNlos = 2, kBoth = 3 };
  void accumulate(const OrientationSet &F, Part part, ChannelTensor &out, bool with_gradient) const;

  std::size_t K_, M_, Q_;
  int p_;
  // Direct path, index (k*M + m)*K + n.
  std::vector<Vec3> los_dir_;
  std::vector<cplx> los_coef_; // C0 / r * exp(-j 2pi r / lambda)
  // Element -> cluster direction, index (k*M + m)*Q + q.
  std::vector<Vec3> hop_dir_;
  // Two-hop coefficient, index ((k*M + m)*Q + q)*K + n.
  std::vector<cplx> hop_coef_;
};

// Convenience wrappers over ChannelModel for one-shot evaluation.
ChannelTensor los_channel(const Topology &topology, const OrientationSet &F, const SceneConfig &config);
ChannelTensor nlos_channel(const Topology &topology, const OrientationSet &F, const SceneConfig &config);
ChannelTensor channel(const Topology &topology, const OrientationSet &F, const SceneConfig &config,
                      bool with_gradient = false);
std::vector<CVec3> channel_gradient(const Topology &topology, const OrientationSet &F, const SceneConfig &config);

/// Checks unit norm (1e-12) and the cap constraint f.e_z >= cos(theta_max) - 1e-12.
bool is_feasible(const OrientationSet &F, double theta_max, double tol = 1e-12);

} // namespace raopt

#endif // RAOPT_CHANNEL_HPP
