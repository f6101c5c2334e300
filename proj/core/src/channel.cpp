// SPDX-License-Identifier: Apache-2.0

#include "raopt/channel.hpp"

#include <cmath>

namespace raopt {

Vec3 boresight_from_angles(double theta, double phi) {
  require(theta >= 0.0 && theta <= kPi / 2.0, "zenith angle must lie in [0, pi/2]");
  require(phi >= -kPi && phi < kPi, "azimuth angle must lie in [-pi, pi)");
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double clipped_pow(double x, int e) {
  if (x <= 0.0)
    return 0.0;
  return e == 0 ? 1.0 : std::pow(x, e);
}

double element_gain(double cos_eps, int p) {
  return 2.0 * (2.0 * p + 1.0) * clipped_pow(cos_eps, 2 * p);
}

ChannelModel::ChannelModel(const Topology &topology, const SceneConfig &config)
    : K_(topology.K()), M_(topology.M()), Q_(topology.Q()), p_(config.p) {
  require(topology.users.size() == K_, "topology must hold one user per transmitter");
  require(topology.rcs.size() == Q_ && topology.phases.size() == Q_, "cluster arrays must have Q entries");
  require(config.lambda > 0.0, "lambda must be > 0");
  require(p_ >= 0, "p must be >= 0");

  const double wavenumber = 2.0 * kPi / config.lambda;
  const double beta0 = std::pow(config.lambda / (4.0 * kPi), 2);
  const double c0 = std::sqrt(beta0 * 2.0 * (2.0 * p_ + 1.0));

  los_dir_.resize(K_ * M_ * K_);
  los_coef_.resize(K_ * M_ * K_);
  hop_dir_.resize(K_ * M_ * Q_);
  hop_coef_.resize(K_ * M_ * Q_ * K_);

  // Second-hop factors sqrt(sigma_q / (4 pi rhat^2)) and phase terms.
  std::vector<double> rhat(Q_ * K_);
  for (std::size_t q = 0; q < Q_; ++q) {
    for (std::size_t n = 0; n < K_; ++n) {
      const double r = (topology.clusters[q] - topology.users[n]).norm();
      require(r > 0.0, "cluster coincides with a user");
      rhat[q * K_ + n] = r;
    }
  }

  for (std::size_t k = 0; k < K_; ++k) {
    for (std::size_t m = 0; m < M_; ++m) {
      const Vec3 &t = topology.element(k, m);
      const std::size_t km = k * M_ + m;
      for (std::size_t n = 0; n < K_; ++n) {
        const Vec3 diff = topology.users[n] - t;
        const double r = diff.norm();
        require(r > 0.0, "element coincides with a user");
        los_dir_[km * K_ + n] = diff / r;
        los_coef_[km * K_ + n] = (c0 / r) * std::polar(1.0, -wavenumber * r);
      }
      for (std::size_t q = 0; q < Q_; ++q) {
        const Vec3 diff = topology.clusters[q] - t;
        const double rt = diff.norm();
        require(rt > 0.0, "element coincides with a cluster");
        hop_dir_[km * Q_ + q] = diff / rt;
        for (std::size_t n = 0; n < K_; ++n) {
          const double rh = rhat[q * K_ + n];
          const double amp = (c0 / rt) * std::sqrt(topology.rcs[q] / (4.0 * kPi * rh * rh));
          hop_coef_[(km * Q_ + q) * K_ + n] = amp * std::polar(1.0, -wavenumber * (rt + rh) + topology.phases[q]);
        }
      }
    }
  }
}

void ChannelModel::accumulate(const OrientationSet &F, Part part, ChannelTensor &out, bool with_gradient) const {
  require(F.K() == K_ && F.M() == M_, "orientation set does not match the topology");
  out.K = K_;
  out.M = M_;
  out.h.assign(K_ * K_, CVec::Zero(static_cast<Eigen::Index>(M_)));
  if (with_gradient)
    out.grad.assign(K_ * M_ * K_, CVec3::Zero());
  else
    out.grad.clear();

  const double pd = static_cast<double>(p_);
  std::vector<double> hop_gain(Q_), hop_slope(Q_);
  for (std::size_t k = 0; k < K_; ++k) {
    for (std::size_t m = 0; m < M_; ++m) {
      const std::size_t km = k * M_ + m;
      const Vec3 &f = F[km];
      const auto mi = static_cast<Eigen::Index>(m);

      if (part & kLos) {
        for (std::size_t n = 0; n < K_; ++n) {
          const Vec3 &u = los_dir_[km * K_ + n];
          const double c = f.dot(u);
          const cplx coef = los_coef_[km * K_ + n];
          out.h[k * K_ + n](mi) += coef * clipped_pow(c, p_);
          if (with_gradient && p_ > 0)
            out.grad[km * K_ + n] += (coef * (pd * clipped_pow(c, p_ - 1))) * u.cast<cplx>();
        }
      }
      if ((part & kNlos) && Q_ > 0) {
        for (std::size_t q = 0; q < Q_; ++q) {
          const double c = f.dot(hop_dir_[km * Q_ + q]);
          hop_gain[q] = clipped_pow(c, p_);
          hop_slope[q] = p_ > 0 ? pd * clipped_pow(c, p_ - 1) : 0.0;
        }
        for (std::size_t n = 0; n < K_; ++n) {
          cplx acc{0.0, 0.0};
          CVec3 gacc = CVec3::Zero();
          for (std::size_t q = 0; q < Q_; ++q) {
            const cplx coef = hop_coef_[(km * Q_ + q) * K_ + n];
            acc += coef * hop_gain[q];
            if (with_gradient && hop_slope[q] != 0.0)
              gacc += (coef * hop_slope[q]) * hop_dir_[km * Q_ + q].cast<cplx>();
          }
          out.h[k * K_ + n](mi) += acc;
          if (with_gradient)
            out.grad[km * K_ + n] += gacc;
        }
      }
    }
  }
}

ChannelTensor ChannelModel::los(const OrientationSet &F) const {
  ChannelTensor out;
  accumulate(F, kLos, out, false);
  return out;
}

ChannelTensor ChannelModel::nlos(const OrientationSet &F) const {
  ChannelTensor out;
  accumulate(F, kNlos, out, false);
  return out;
}

ChannelTensor ChannelModel::evaluate(const OrientationSet &F, bool with_gradient) const {
  ChannelTensor out;
  accumulate(F, kBoth, out, with_gradient);
  return out;
}

std::vector<CVec3> ChannelModel::gradient(const OrientationSet &F) const {
  return evaluate(F, true).grad;
}

ChannelTensor los_channel(const Topology &topology, const OrientationSet &F, const SceneConfig &config) {
  return ChannelModel(topology, config).los(F);
}

ChannelTensor nlos_channel(const Topology &topology, const OrientationSet &F, const SceneConfig &config) {
  return ChannelModel(topology, config).nlos(F);
}

ChannelTensor channel(const Topology &topology, const OrientationSet &F, const SceneConfig &config,
                      bool with_gradient) {
  return ChannelModel(topology, config).evaluate(F, with_gradient);
}

std::vector<CVec3> channel_gradient(const Topology &topology, const OrientationSet &F, const SceneConfig &config) {
  return ChannelModel(topology, config).gradient(F);
}

bool is_feasible(const OrientationSet &F, double theta_max, double tol) {
  const double floor_z = std::cos(theta_max) - tol;
  for (const Vec3 &f : F.flat()) {
    if (std::abs(f.norm() - 1.0) > tol || f.z() < floor_z)
      return false;
  }
  return true;
}

} // namespace raopt
