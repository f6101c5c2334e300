// SPDX-License-Identifier: Apache-2.0
//
// Common numeric aliases and indexed containers shared by every raopt module.
//
// Index convention: transmitters/users k, n and array elements m are 1-based in
// the mathematical write-up and 0-based everywhere in code. Element m of
// transmitter k lives at flat index k * M + m.

#ifndef RAOPT_TYPES_HPP
#define RAOPT_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace raopt {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

/// K x M boresight unit vectors f_{k,m}.
class OrientationSet {
public:
  OrientationSet() = default;
  OrientationSet(std::size_t K, std::size_t M, const Vec3 &fill = Vec3::UnitZ())
      : K_(K), M_(M), f_(K * M, fill) {}

  std::size_t K() const { return K_; }
  std::size_t M() const { return M_; }
  std::size_t size() const { return f_.size(); }

  Vec3 &operator()(std::size_t k, std::size_t m) { return f_[k * M_ + m]; }
  const Vec3 &operator()(std::size_t k, std::size_t m) const { return f_[k * M_ + m]; }
  Vec3 &operator[](std::size_t j) { return f_[j]; }
  const Vec3 &operator[](std::size_t j) const { return f_[j]; }

  const std::vector<Vec3> &flat() const { return f_; }

  bool operator==(const OrientationSet &o) const {
    return K_ == o.K_ && M_ == o.M_ && f_ == o.f_;
  }

private:
  std::size_t K_ = 0;
  std::size_t M_ = 0;
  std::vector<Vec3> f_;
};

/// Per-transmitter beamformers w_k with their power budgets (mW).
struct BeamformerSet {
  std::vector<CVec> w;
  std::vector<double> budgets;

  std::size_t K() const { return w.size(); }
  /// Largest ||w_k||^2 - P_k over all transmitters (<= 0 when feasible).
  double max_budget_violation() const;
};

/// Throws std::invalid_argument with `what` when `cond` is false.
inline void require(bool cond, const char *what) {
  if (!cond)
    throw std::invalid_argument(what);
}

} // namespace raopt

#endif // RAOPT_TYPES_HPP
