// SPDX-License-Identifier: Apache-2.0

#include "raopt/discrete.hpp"

#include "raopt/channel.hpp"
#include "raopt/metrics.hpp"
#include "raopt/random.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace raopt {

namespace {

constexpr double kDuplicateAngle = 1e-9;

double angle_between(const Vec3 &a, const Vec3 &b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

void push_unique(Codebook &cb, double theta, double phi) {
  const Vec3 dir = boresight_from_angles(theta, phi);
  for (const Vec3 &existing : cb.directions)
    if (angle_between(existing, dir) <= kDuplicateAngle)
      return;
  cb.directions.push_back(dir);
  cb.theta.push_back(theta);
  cb.phi.push_back(phi);
}

double wrap_azimuth(double phi) {
  if (phi >= kPi)
    phi -= 2.0 * kPi;
  return phi;
}

} // namespace

std::string Codebook::to_csv() const {
  std::ostringstream os;
  os << "index,theta,phi,x,y,z\n" << std::fixed << std::setprecision(9);
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const Vec3 &d = directions[i];
    os << i << ',' << theta[i] << ',' << phi[i] << ',' << d.x() << ',' << d.y() << ',' << d.z() << '\n';
  }
  return os.str();
}

Codebook uniform_grid_codebook(std::size_t n_theta, std::size_t n_phi, double theta_max) {
  require(n_theta >= 1 && n_phi >= 1, "grid codebook needs N_theta >= 1 and N_phi >= 1");
  require(theta_max >= 0.0 && theta_max <= kPi / 2.0, "theta_max must lie in [0, pi/2]");
  Codebook cb;
  cb.kind = CodebookKind::uniform_grid;
  cb.theta_max = theta_max;
  cb.n_theta = n_theta;
  cb.n_phi = n_phi;
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = n_theta == 1 ? 0.0 : theta_max * static_cast<double>(i) / static_cast<double>(n_theta - 1);
    if (theta == 0.0) {
      push_unique(cb, 0.0, 0.0);
      continue;
    }
    for (std::size_t j = 0; j < n_phi; ++j)
      push_unique(cb, theta, -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi));
  }
  return cb;
}

Codebook fibonacci_codebook(std::size_t n_dir, double theta_max) {
  require(n_dir >= 1, "Fibonacci codebook needs N_dir >= 1");
  require(theta_max >= 0.0 && theta_max <= kPi / 2.0, "theta_max must lie in [0, pi/2]");
  Codebook cb;
  cb.kind = CodebookKind::fibonacci;
  cb.theta_max = theta_max;
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double span = 1.0 - std::cos(theta_max);
  const double n = static_cast<double>(n_dir);
  for (std::size_t i = 0; i < n_dir; ++i) {
    const double di = static_cast<double>(i);
    const double z = 1.0 - (di + 0.5) / n * span;
    const double theta = std::acos(std::clamp(z, -1.0, 1.0));
    const double ratio = di / (golden * golden);
    const double phi = wrap_azimuth(2.0 * kPi * (ratio - std::floor(ratio)));
    push_unique(cb, theta, phi);
  }
  return cb;
}

std::size_t nearest_codeword(const Vec3 &f, const Codebook &codebook) {
  require(codebook.size() > 0, "empty codebook");
  std::size_t best = 0;
  double best_cos = f.dot(codebook.directions[0]);
  for (std::size_t i = 1; i < codebook.size(); ++i) {
    const double c = f.dot(codebook.directions[i]);
    if (c > best_cos) {
      best_cos = c;
      best = i;
    }
  }
  return best;
}

OrientationSet nearest_projection(const OrientationSet &F, const Codebook &codebook) {
  OrientationSet out = F;
  for (std::size_t j = 0; j < F.size(); ++j)
    out[j] = codebook.directions[nearest_codeword(F[j], codebook)];
  return out;
}

OrientationSet orientations_from_indices(const std::vector<std::size_t> &indices, const Codebook &codebook,
                                         std::size_t K, std::size_t M) {
  require(indices.size() == K * M, "index count does not match K*M");
  OrientationSet F(K, M);
  for (std::size_t j = 0; j < indices.size(); ++j)
    F[j] = codebook.directions.at(indices[j]);
  return F;
}

namespace {

struct Evaluation {
  double wsr = 0.0;
  BeamformerSet w;
};

class AssignmentEvaluator {
public:
  AssignmentEvaluator(const SceneConfig &config, const Topology &topology, const Codebook &codebook,
                      const WmmseParams &params)
      : config_(config), model_(topology, config), codebook_(codebook), params_(params),
        noise_(config.noise_mw()), weights_(config.weights()), budgets_(config.budgets_mw()) {}

  Evaluation solve(const std::vector<std::size_t> &indices, const WmmseParams &params) const {
    const OrientationSet F = orientations_from_indices(indices, codebook_, config_.K, config_.M());
    const ChannelTensor H = model_.evaluate(F);
    WmmseState st = wmmse_solve(H, noise_, weights_, budgets_, params);
    Evaluation ev;
    ev.wsr = weighted_sum_rate(H, st.w.w, noise_, weights_);
    ev.w = std::move(st.w);
    return ev;
  }

  // Memoized on the assignment; repeated draws reuse the first solve.
  const Evaluation &operator()(const std::vector<std::size_t> &indices) {
    auto it = cache_.find(indices);
    if (it == cache_.end())
      it = cache_.emplace(indices, solve(indices, params_)).first;
    return it->second;
  }

  std::size_t evaluations() const { return cache_.size(); }

private:
  const SceneConfig &config_;
  ChannelModel model_;
  const Codebook &codebook_;
  WmmseParams params_;
  std::vector<double> noise_, weights_, budgets_;
  std::map<std::vector<std::size_t>, Evaluation> cache_;
};

} // namespace

CemResult cem_solve(const SceneConfig &config, const Topology &topology, const Codebook &codebook,
                    const CemParams &params, std::uint64_t seed) {
  config.validate();
  require(codebook.size() >= 1, "empty codebook");
  require(params.samples >= 1, "CEM sample size must be >= 1");
  const double elite_real = params.elite_fraction * static_cast<double>(params.samples);
  require(elite_real >= 1.0 - 1e-12, "elite_fraction * S must be >= 1");
  require(params.smoothing >= 0.0 && params.smoothing <= 1.0, "smoothing must lie in [0, 1]");
  const auto n_elite =
      std::min(params.samples, static_cast<std::size_t>(std::ceil(elite_real - 1e-9)));

  const std::size_t J = config.K * config.M();
  const std::size_t N = codebook.size();
  Rng rng(seed);
  AssignmentEvaluator evaluate(config, topology, codebook, params.inner);

  CemResult res;
  res.pmfs.assign(J, std::vector<double>(N, 1.0 / static_cast<double>(N)));

  auto draw = [&] {
    std::vector<std::size_t> idx(J);
    for (std::size_t j = 0; j < J; ++j)
      idx[j] = rng.categorical(res.pmfs[j]);
    return idx;
  };

  res.indices = draw();
  {
    const Evaluation &ev = evaluate(res.indices);
    res.wsr = ev.wsr;
    res.beamformers = ev.w;
  }
  res.best_trace.push_back(res.wsr);

  std::vector<std::vector<std::size_t>> batch(params.samples);
  std::vector<double> scores(params.samples);
  std::vector<std::size_t> order(params.samples);
  for (int t = 0; t < params.max_iter; ++t) {
    for (std::size_t s = 0; s < params.samples; ++s) {
      batch[s] = draw();
      scores[s] = evaluate(batch[s]).wsr;
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    const double inv_elite = 1.0 / static_cast<double>(n_elite);
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<double> q(N, 0.0);
      for (std::size_t e = 0; e < n_elite; ++e)
        q[batch[order[e]][j]] += inv_elite;
      for (std::size_t i = 0; i < N; ++i)
        res.pmfs[j][i] = (1.0 - params.smoothing) * res.pmfs[j][i] + params.smoothing * q[i];
    }

    const std::size_t top = order.front();
    if (scores[top] > res.wsr) {
      res.wsr = scores[top];
      res.indices = batch[top];
      res.beamformers = evaluate(batch[top]).w;
    }
    res.best_trace.push_back(res.wsr);
    ++res.iterations;

    const bool collapsed = std::all_of(res.pmfs.begin(), res.pmfs.end(), [](const std::vector<double> &p) {
      return *std::max_element(p.begin(), p.end()) >= 1.0 - 1e-12;
    });
    if (collapsed)
      break;
  }
  res.evaluations = evaluate.evaluations();

  // Full-budget re-solve of the winner; same start and updates as the sample solve, run longer.
  Evaluation polished = evaluate.solve(res.indices, params.polish);
  if (polished.wsr >= res.wsr) {
    res.wsr = polished.wsr;
    res.beamformers = std::move(polished.w);
  }
  res.orientations = orientations_from_indices(res.indices, codebook, config.K, config.M());
  return res;
}

BruteForceResult brute_force(const SceneConfig &config, const Topology &topology, const Codebook &codebook,
                             const WmmseParams &wmmse) {
  config.validate();
  require(codebook.size() >= 1, "empty codebook");
  const std::size_t J = config.K * config.M();
  const std::size_t N = codebook.size();
  require(std::pow(static_cast<double>(N), static_cast<double>(J)) <= kMaxBruteForceAssignments,
          "brute force limited to 1e6 assignments");

  AssignmentEvaluator evaluate(config, topology, codebook, wmmse);
  BruteForceResult res;
  res.wsr = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(J, 0);
  while (true) {
    Evaluation ev = evaluate.solve(idx, wmmse);
    ++res.evaluated;
    if (ev.wsr > res.wsr) {
      res.wsr = ev.wsr;
      res.indices = idx;
      res.beamformers = std::move(ev.w);
    }
    // Odometer increment, last element fastest.
    std::size_t j = J;
    while (j > 0) {
      --j;
      if (++idx[j] < N)
        break;
      idx[j] = 0;
      if (j == 0) {
        res.orientations = orientations_from_indices(res.indices, codebook, config.K, config.M());
        return res;
      }
    }
  }
}

} // namespace raopt
