// SPDX-License-Identifier: Apache-2.0
//
// Acceptance driver. Usage: raopt_acceptance <criterion>, criterion in
// {1, 2, 3, 4, 5, 6, 7a, 7b, 7c, 7d, 7e, 8, all}. Prints one PASS/FAIL line per
// criterion and exits nonzero when any fails.

#include "support.hpp"

#include "raopt/ao.hpp"
#include "raopt/channel.hpp"
#include "raopt/config.hpp"
#include "raopt/discrete.hpp"
#include "raopt/harness.hpp"
#include "raopt/linear_bf.hpp"
#include "raopt/metrics.hpp"
#include "raopt/orient_fw.hpp"
#include "raopt/wmmse.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#ifndef RAOPT_SPEC_DIR
#define RAOPT_SPEC_DIR "tools/specs"
#endif

using namespace raopt;
using raopt::testing::min_clip_argument;
using raopt::testing::random_cap_point;
using raopt::testing::random_cvec;
using raopt::testing::random_orientations;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

ExperimentSpec load_spec(const std::string &name) {
  return parse_experiment_spec(read_text_file(std::string(RAOPT_SPEC_DIR) + "/" + name));
}

// Mean wsr per (scheme, sweep value).
std::map<std::pair<std::string, double>, double> means(const ExperimentResult &r) {
  std::map<std::pair<std::string, double>, double> m;
  for (const SummaryCell &c : r.summary)
    m[{c.scheme, c.sweep_value}] = c.mean;
  return m;
}

bool nondecreasing(const std::vector<double> &v, double tol, double *worst = nullptr) {
  bool ok = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double drop = v[i - 1] - v[i];
    if (worst)
      *worst = std::max(*worst, drop);
    ok = ok && drop <= tol;
  }
  return ok;
}

Verdict feasibility() {
  const auto t0 = Clock::now();
  double worst_norm = 0.0, worst_cap = 0.0, worst_power = -1e300;
  std::size_t iterates = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SceneConfig c;
    c.seed = seed;
    const AoResult r = ao_solve(c, generate_topology(c), {}, std::nullopt, true);
    const double floor = std::cos(c.theta_max);
    auto check = [&](const OrientationSet &F) {
      for (const Vec3 &f : F.flat()) {
        worst_norm = std::max(worst_norm, std::abs(f.norm() - 1.0));
        worst_cap = std::max(worst_cap, floor - f.z());
      }
      ++iterates;
    };
    for (const OrientationSet &F : r.orientation_history)
      check(F);
    check(r.orientations);
    for (const BeamformerSet &b : r.beamformer_history)
      worst_power = std::max(worst_power, b.max_budget_violation());
    worst_power = std::max(worst_power, r.beamformers.max_budget_violation());
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = worst_norm <= 1e-12 && worst_cap <= 1e-12 && worst_power <= 1e-9 && secs < 120.0;
  v.detail = std::to_string(iterates) + " orientation iterates; max ||f|-1| " + fmt("%.3g", worst_norm) +
             ", max cap violation " + fmt("%.3g", worst_cap) + ", max power excess " + fmt("%.3g", worst_power) +
             " mW, " + fmt("%.1f", secs) + " s";
  return v;
}

Verdict monotonicity() {
  double w_wmmse = 0.0, w_fw = 0.0, w_ao = 0.0, w_cem = 0.0;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SceneConfig c;
    c.seed = seed;
    const Topology topo = generate_topology(c);
    const ChannelModel model(topo, c);
    Rng rng(seed + 1000);
    const OrientationSet F0 = random_orientations(rng, c.K, c.M(), c.theta_max);
    const ChannelTensor H = model.evaluate(F0);

    const WmmseState s = wmmse_solve(H, c.noise_mw(), c.weights(), c.budgets_mw());
    ok = nondecreasing(s.objective_trace, 1e-9, &w_wmmse) && ok;

    const FixedBeamformerObjective obj{&model, &s.w, c.noise_mw(), c.weights()};
    const FwResult fw = optimize_orientations([&](const OrientationSet &F) { return obj.value(F); },
                                              [&](const OrientationSet &F) { return obj.gradient(F); }, F0,
                                              c.theta_max);
    std::vector<double> fw_trace{fw.initial_wsr};
    for (const FwTraceEntry &e : fw.trace)
      fw_trace.push_back(e.wsr);
    ok = nondecreasing(fw_trace, 1e-9, &w_fw) && ok;

    const AoResult ao = ao_solve(c, topo);
    std::vector<double> ao_trace{ao.initial_wsr};
    for (const AoTraceEntry &e : ao.trace) {
      ao_trace.push_back(e.wsr_wmmse);
      ao_trace.push_back(e.wsr);
    }
    ok = nondecreasing(ao_trace, 1e-9, &w_ao) && ok;

    const CemResult cem = cem_solve(c, topo, fibonacci_codebook(25, c.theta_max), {}, seed);
    ok = nondecreasing(cem.best_trace, 1e-9, &w_cem) && ok;
  }
  Verdict v;
  v.pass = ok;
  v.detail = "largest per-step drop: WMMSE " + fmt("%.3g", w_wmmse) + ", Frank-Wolfe " + fmt("%.3g", w_fw) +
             ", AO outer " + fmt("%.3g", w_ao) + ", CEM best-so-far " + fmt("%.3g", w_cem);
  return v;
}

Verdict gradient_oracle() {
  const auto t0 = Clock::now();
  constexpr double kStep = 1e-6;
  double worst = 0.0;
  int configs = 0;
  std::uint64_t seed = 0;
  while (configs < 100) {
    ++seed;
    SceneConfig c;
    c.seed = seed;
    const Topology topo = generate_topology(c);
    const ChannelModel model(topo, c);
    Rng rng(seed * 7919);
    const OrientationSet F = random_orientations(rng, c.K, c.M(), c.theta_max);
    if (min_clip_argument(topo, F) <= 1e-3)
      continue;
    BeamformerSet bf;
    bf.budgets = c.budgets_mw();
    for (std::size_t k = 0; k < c.K; ++k) {
      const CVec w = random_cvec(rng, static_cast<Eigen::Index>(c.M()));
      bf.w.push_back(std::sqrt(bf.budgets[k]) * w / w.norm());
    }
    const FixedBeamformerObjective obj{&model, &bf, c.noise_mw(), c.weights()};
    const auto fd = finite_difference_gradient([&](const OrientationSet &X) { return obj.value(X); }, F, kStep);
    const auto an = obj.gradient(F);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < F.size(); ++j) {
      const Vec3 ta = tangent_project(F[j], an[j]);
      num += (fd[j] - ta).squaredNorm();
      den += ta.squaredNorm();
    }
    worst = std::max(worst, std::sqrt(num / den));
    ++configs;
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = worst < 1e-5 && secs < 30.0;
  v.detail = "max relative error " + fmt("%.3g", worst) + " over 100 configurations, " + fmt("%.1f", secs) + " s";
  return v;
}

Verdict fw_machinery() {
  double worst_oracle = -1e300, min_gap = 1e300, worst_armijo = -1e300;
  bool ok = true;
  Rng rng(4242);
  for (int s = 0; s < 100; ++s) {
    const double theta_max = rng.uniform(0.05, kPi / 2);
    const Vec3 f = random_cap_point(rng, theta_max);
    const Vec3 g(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec3 tg = tangent_project(f, g);
    const Vec3 d = cap_oracle(f, tg, theta_max);
    const double best = tg.dot(d);
    for (int i = 0; i < 100000; ++i) {
      const double excess = tg.dot(random_cap_point(rng, theta_max)) - best;
      worst_oracle = std::max(worst_oracle, excess);
    }
    const Vec3 dir = d - f;
    min_gap = std::min(min_gap, fw_gap(std::span<const Vec3>(&tg, 1), std::span<const Vec3>(&dir, 1)));
  }
  ok = worst_oracle <= 1e-12 && min_gap >= -1e-12;

  const ArmijoParams armijo;
  std::size_t accepted = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SceneConfig c;
    c.seed = seed;
    const AoResult r = ao_solve(c, generate_topology(c));
    for (const FwTraceEntry &e : r.fw_steps) {
      min_gap = std::min(min_gap, e.gap);
      ok = ok && e.gap >= -1e-12;
      if (!e.accepted)
        continue;
      ++accepted;
      const double shortfall = armijo.c_a * e.step * e.gap - (e.wsr - e.wsr_prev);
      worst_armijo = std::max(worst_armijo, shortfall);
      ok = ok && shortfall <= 0.0;
    }
  }
  Verdict v;
  v.pass = ok;
  v.detail = "oracle beaten by " + fmt("%.3g", worst_oracle) + " at most over 1e7 samples, min gap " +
             fmt("%.3g", min_gap) + ", " + std::to_string(accepted) + " accepted steps, worst Armijo shortfall " +
             fmt("%.3g", worst_armijo);
  return v;
}

Verdict closed_forms() {
  double e_wmmse = 0.0, e_zf = 0.0, e_mrt = 0.0, e_quad = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SceneConfig c;
    c.K = 1;
    c.seed = seed;
    c.p_max_dbm = {static_cast<double>(seed % 5) * 5.0 - 10.0};
    const Topology topo = generate_topology(c);
    Rng rng(seed + 31);
    const ChannelTensor H = channel(topo, random_orientations(rng, 1, c.M(), c.theta_max), c);
    const WmmseState s = wmmse_solve(H, c.noise_mw(), c.weights(), c.budgets_mw());
    const double capacity = std::log2(1.0 + c.budget_mw(0) * H(0, 0).squaredNorm() / c.noise_mw(0));
    e_wmmse = std::max(e_wmmse, std::abs(weighted_sum_rate(H, s.w.w, c.noise_mw(), c.weights()) - capacity));
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SceneConfig c;
    c.seed = seed;
    c.My = 2 + seed % 3;
    const Topology topo = generate_topology(c);
    Rng rng(seed + 57);
    const ChannelTensor H = channel(topo, random_orientations(rng, c.K, c.M(), c.theta_max), c);
    const auto P = c.budgets_mw();
    const LinearBeamforming z = zf(H, P);
    for (std::size_t k = 0; k < c.K; ++k)
      for (std::size_t l = 0; l < c.K; ++l)
        if (l != k)
          e_zf = std::max(e_zf, std::norm(H(k, l).dot(z.bf.w[k])) / (P[k] * H(k, l).squaredNorm()));
    const LinearBeamforming m = mrt(H, P);
    for (std::size_t k = 0; k < c.K; ++k) {
      const double want = P[k] * H(k, k).squaredNorm();
      e_mrt = std::max(e_mrt, std::abs(std::norm(H(k, k).dot(m.bf.w[k])) - want) / want);
    }
  }
  for (int p : {0, 1, 2, 4, 6}) {
    const int n = 200000;
    const double h = kPi / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double eps = (i + 0.5) * h;
      sum += element_gain(std::cos(eps), p) * std::sin(eps);
    }
    e_quad = std::max(e_quad, std::abs(2.0 * kPi * sum * h / (4.0 * kPi) - 1.0));
  }
  Verdict v;
  v.pass = e_wmmse <= 1e-8 && e_zf < 1e-20 && e_mrt <= 1e-12 && e_quad <= 1e-6;
  v.detail = "single-user WMMSE vs capacity " + fmt("%.3g", e_wmmse) + " bps/Hz, ZF leakage ratio " +
             fmt("%.3g", e_zf) + ", MRT power rel. error " + fmt("%.3g", e_mrt) + ", quadrature rel. error " +
             fmt("%.3g", e_quad);
  return v;
}

Verdict discrete_optimality() {
  int matches = 0;
  bool bound = true;
  double worst_excess = -1e300;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SceneConfig c;
    c.K = 2;
    c.Mx = 1;
    c.My = 1;
    c.seed = seed;
    const Topology topo = generate_topology(c);
    const Codebook cb = fibonacci_codebook(4, c.theta_max);
    const BruteForceResult bf = brute_force(c, topo, cb);
    const CemResult cem = cem_solve(c, topo, cb, {}, seed + 0x9E3779B97F4A7C15ULL);
    if (std::abs(cem.wsr - bf.wsr) <= 1e-6)
      ++matches;
    worst_excess = std::max(worst_excess, cem.wsr - bf.wsr);
    bound = bound && cem.wsr <= bf.wsr;
  }
  Verdict v;
  v.pass = matches >= 18 && bound;
  v.detail = "CEM matched brute force in " + std::to_string(matches) + "/20 runs; max CEM - optimum " +
             fmt("%.3g", worst_excess);
  return v;
}

Verdict pmax_trend() {
  ExperimentSpec spec = load_spec("fig_pmax.cfg");
  spec.schemes = {Scheme::wmmse_ra, Scheme::wmmse_fixed};
  auto m = means(run_experiment(spec));
  bool ok = true;
  double prev = -1e300;
  std::ostringstream os;
  os << "gap by P_max:";
  for (double x : spec.values) {
    const double gap = m[{"wmmse_ra", x}] - m[{"wmmse_fixed", x}];
    ok = ok && gap > 0.0 && gap >= prev;
    prev = gap;
    os << ' ' << x << "dBm=" << fmt("%.3f", gap);
  }
  return {ok, os.str()};
}

Verdict directivity_trend() {
  ExperimentSpec spec = load_spec("fig_p.cfg");
  spec.schemes = {Scheme::wmmse_ra, Scheme::wmmse_fixed};
  spec.values = {1, 3, 5};
  auto m = means(run_experiment(spec));
  bool ok = true;
  double prev = -1e300;
  std::ostringstream os;
  os << "RA gain by p:";
  for (double x : spec.values) {
    const double gain = m[{"wmmse_ra", x}] - m[{"wmmse_fixed", x}];
    ok = ok && gain >= prev;
    prev = gain;
    os << " p=" << x << ':' << fmt("%.3f", gain);
  }
  return {ok, os.str()};
}

Verdict rotation_range_trend() {
  ExperimentSpec spec = load_spec("fig_theta.cfg");
  spec.schemes = {Scheme::wmmse_ra};
  spec.values = {0.0, kPi / 10, kPi / 3};
  auto m = means(run_experiment(spec));
  const double w0 = m[{"wmmse_ra", 0.0}], w10 = m[{"wmmse_ra", kPi / 10}], w3 = m[{"wmmse_ra", kPi / 3}];
  Verdict v;
  v.pass = w10 - w0 > 0.5 * (w3 - w0);
  v.detail = "wsr(0)=" + fmt("%.3f", w0) + ", wsr(pi/10)=" + fmt("%.3f", w10) + ", wsr(pi/3)=" + fmt("%.3f", w3) +
             "; early gain " + fmt("%.3f", w10 - w0) + " vs half of full gain " + fmt("%.3f", 0.5 * (w3 - w0));
  return v;
}

Verdict codebook_trend() {
  ExperimentSpec spec = load_spec("fig_ndir.cfg");
  spec.schemes = {Scheme::disc_cem, Scheme::disc_proj};
  auto m = means(run_experiment(spec));
  ExperimentSpec ao = spec;
  ao.schemes = {Scheme::wmmse_ra};
  ao.sweep = SweepVar::none;
  ao.values.clear();
  const double ao_mean = run_experiment(ao).summary.front().mean;

  bool ok = true;
  std::ostringstream os;
  os << "AO " << fmt("%.3f", ao_mean) << "; cem/proj by N_dir:";
  for (double x : spec.values) {
    const double cem = m[{"disc_cem", x}], proj = m[{"disc_proj", x}];
    ok = ok && cem >= proj;
    os << ' ' << x << '=' << fmt("%.3f", cem) << '/' << fmt("%.3f", proj);
  }
  const double rel = std::abs(m[{"disc_cem", 16.0}] - ao_mean) / ao_mean;
  ok = ok && rel <= 0.10;
  os << "; CEM@16 within " << fmt("%.1f", 100.0 * rel) << "% of AO";
  return {ok, os.str()};
}

Verdict flat_cap_baselines() {
  ExperimentSpec spec;
  spec.schemes = {Scheme::wmmse_ra, Scheme::mrt_ra, Scheme::zf_ra,
                  Scheme::wmmse_fixed, Scheme::mrt_fixed, Scheme::zf_fixed};
  spec.base.theta_max = 0.0;
  const ExperimentResult r = run_experiment(spec);
  const std::size_t T = spec.trials;
  bool ok = true;
  std::size_t compared = 0;
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t t = 0; t < T; ++t) {
      const ResultRow &ra = r.rows[s * T + t];
      const ResultRow &fixed = r.rows[(s + 3) * T + t];
      ok = ok && ra.seed == fixed.seed && ra.wsr == fixed.wsr && ra.rates == fixed.rates;
      ++compared;
    }
  return {ok, std::to_string(compared) + " RA/fixed row pairs compared at theta_max = 0 for bit equality"};
}

Verdict determinism() {
  ExperimentSpec spec = load_spec("fig_theta.cfg");
  spec.schemes = {Scheme::wmmse_ra, Scheme::mrt_ra, Scheme::zf_ra, Scheme::wmmse_fixed, Scheme::isotropic_fixed,
                  Scheme::disc_cem, Scheme::disc_proj};
  spec.values = {0.0, kPi / 6};
  spec.trials = 3;
  spec.threads = 1;
  const std::string a = results_to_csv(run_experiment(spec).rows, spec.base.K);
  const std::string b = results_to_csv(run_experiment(spec).rows, spec.base.K);
  spec.threads = 4;
  const std::string c = results_to_csv(run_experiment(spec).rows, spec.base.K);
  return {a == b && a == c, std::to_string(a.size()) + " CSV bytes; rerun identical: " + (a == b ? "yes" : "no") +
                                ", 4-thread run identical: " + (a == c ? "yes" : "no")};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> &criteria() {
  static const std::vector<std::pair<std::string, std::function<Verdict()>>> all{
      {"1", feasibility},          {"2", monotonicity},      {"3", gradient_oracle},
      {"4", fw_machinery},         {"5", closed_forms},      {"6", discrete_optimality},
      {"7a", pmax_trend},          {"7b", directivity_trend}, {"7c", rotation_range_trend},
      {"7d", codebook_trend},      {"7e", flat_cap_baselines}, {"8", determinism},
  };
  return all;
}

} // namespace

int main(int argc, char **argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  bool any = false, all_pass = true;
  for (const auto &[id, fn] : criteria()) {
    if (which != "all" && which != id)
      continue;
    any = true;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", v.pass ? "PASS" : "FAIL", id.c_str(), v.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && v.pass;
  }
  if (!any) {
    std::fprintf(stderr, "unknown criterion '%s'\n", which.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
