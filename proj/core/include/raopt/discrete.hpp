// SPDX-License-Identifier: Apache-2.0
//
// Finite orientation codebooks on the spherical cap and the joint discrete
// search over them: a cross-entropy method (CEM) with per-element categorical
// distributions, and an exhaustive oracle for tiny instances.

#ifndef RAOPT_DISCRETE_HPP
#define RAOPT_DISCRETE_HPP

#include "raopt/scene.hpp"
#include "raopt/types.hpp"
#include "raopt/wmmse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace raopt {

enum class CodebookKind { uniform_grid, fibonacci };

struct Codebook {
  CodebookKind kind = CodebookKind::fibonacci;
  std::vector<Vec3> directions;
  std::vector<double> theta; // zenith of each direction
  std::vector<double> phi;   // azimuth in [-pi, pi)
  double theta_max = 0.0;
  std::size_t n_theta = 0; // grid only
  std::size_t n_phi = 0;   // grid only

  std::size_t size() const { return directions.size(); }
  /// "index,theta,phi,x,y,z" rows with a header, 9 fixed decimals.
  std::string to_csv() const;
};

/// theta in {0, theta_max/(N_theta-1), ..., theta_max}, phi in {-pi + 2pi i / N_phi};
/// the theta = 0 row collapses to the single pole direction.
Codebook uniform_grid_codebook(std::size_t n_theta, std::size_t n_phi, double theta_max);

/// Spherical Fibonacci samples: z_i = 1 - (i + 1/2)/N (1 - cos theta_max),
/// phi_i = 2pi frac(i / golden^2), mapped into [-pi, pi).
Codebook fibonacci_codebook(std::size_t n_dir, double theta_max);

/// Codeword index with the largest cosine to f; ties go to the lowest index.
std::size_t nearest_codeword(const Vec3 &f, const Codebook &codebook);

OrientationSet nearest_projection(const OrientationSet &F, const Codebook &codebook);

/// Orientation set built from one codeword index per element (flat k*M + m).
OrientationSet orientations_from_indices(const std::vector<std::size_t> &indices, const Codebook &codebook,
                                         std::size_t K, std::size_t M);

struct CemParams {
  std::size_t samples = 64;     // S
  double elite_fraction = 0.2;  // elites = ceil(elite_fraction * S)
  double smoothing = 0.3;       // p <- (1 - tau) p + tau q
  int max_iter = 30;
  WmmseParams inner{1e-5, 100}; // per-sample beamforming solve
  WmmseParams polish{};         // final solve on the best assignment
};

struct CemResult {
  OrientationSet orientations;
  std::vector<std::size_t> indices;
  BeamformerSet beamformers;
  double wsr = 0.0;                // after the final polish
  std::vector<double> best_trace;  // best-so-far after initialization, then after each iteration
  std::vector<std::vector<double>> pmfs;
  int iterations = 0;
  std::size_t evaluations = 0;     // distinct WMMSE solves
};

/// Cross-entropy search starting from uniform pmfs. The loop also ends once
/// every pmf has collapsed onto a single codeword (mass >= 1 - 1e-12).
/// Throws std::invalid_argument for S < 1 or elite_fraction * S < 1.
CemResult cem_solve(const SceneConfig &config, const Topology &topology, const Codebook &codebook,
                    const CemParams &params, std::uint64_t seed);

struct BruteForceResult {
  OrientationSet orientations;
  std::vector<std::size_t> indices;
  BeamformerSet beamformers;
  double wsr = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr double kMaxBruteForceAssignments = 1e6;

/// Exhaustive search over |F|^(K M) assignments, each solved by WMMSE with
/// `wmmse`. Throws std::invalid_argument when the count exceeds 1e6.
BruteForceResult brute_force(const SceneConfig &config, const Topology &topology, const Codebook &codebook,
                             const WmmseParams &wmmse = {});

} // namespace raopt

#endif // RAOPT_DISCRETE_HPP
