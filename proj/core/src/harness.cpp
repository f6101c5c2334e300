// SPDX-License-Identifier: Apache-2.0

#include "raopt/harness.hpp"

#include "raopt/channel.hpp"
#include "raopt/config.hpp"
#include "raopt/linear_bf.hpp"
#include "raopt/metrics.hpp"
#include "raopt/wmmse.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <cerrno>
#include <mutex>
#include <thread>

namespace raopt {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 9> kSchemes{{
    {Scheme::wmmse_ra, "wmmse_ra"},
    {Scheme::mrt_ra, "mrt_ra"},
    {Scheme::zf_ra, "zf_ra"},
    {Scheme::wmmse_fixed, "wmmse_fixed"},
    {Scheme::mrt_fixed, "mrt_fixed"},
    {Scheme::zf_fixed, "zf_fixed"},
    {Scheme::isotropic_fixed, "isotropic_fixed"},
    {Scheme::disc_cem, "disc_cem"},
    {Scheme::disc_proj, "disc_proj"},
}};

constexpr std::array<std::pair<SweepVar, std::string_view>, 6> kSweeps{{
    {SweepVar::none, "none"},
    {SweepVar::p_max_dbm, "p_max_dbm"},
    {SweepVar::My, "My"},
    {SweepVar::p, "p"},
    {SweepVar::theta_max, "theta_max"},
    {SweepVar::N_dir, "N_dir"},
}};

constexpr std::uint64_t kCemSeedOffset = 0x9E3779B97F4A7C15ULL;

std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  // "-0.000000000" and "0.000000000" must not depend on the sign of a rounding residue.
  if (std::strcmp(buf, "-0.000000000") == 0)
    return "0.000000000";
  return buf;
}

std::size_t whole_number(double v, const char *name) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
    throw SpecError(std::string(name) + " sweep values must be non-negative integers");
  return static_cast<std::size_t>(v);
}

SchemeOutcome evaluate_fixed(const SceneConfig &config, const Topology &topology, const BeamformerSet &bf,
                             const OrientationSet &F, int iterations) {
  const ChannelModel model(topology, config);
  const RateReport r = rates(model.evaluate(F), bf, config.noise_mw(), config.weights());
  SchemeOutcome out;
  out.wsr = r.wsr;
  out.rates = r.rate;
  out.iterations = iterations;
  out.beamformers = bf;
  out.orientations = F;
  return out;
}

std::vector<double> sweep_points(const ExperimentSpec &spec) {
  if (spec.sweep == SweepVar::none)
    return {0.0};
  return spec.values;
}

} // namespace

std::string_view scheme_name(Scheme s) {
  for (const auto &[k, v] : kSchemes)
    if (k == s)
      return v;
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (const auto &[k, v] : kSchemes)
    if (v == name)
      return k;
  throw SpecError("unknown scheme '" + std::string(name) + "'");
}

std::string_view sweep_name(SweepVar v) {
  for (const auto &[k, n] : kSweeps)
    if (k == v)
      return n;
  return "unknown";
}

SweepVar parse_sweep(std::string_view name) {
  for (const auto &[k, n] : kSweeps)
    if (n == name)
      return k;
  throw SpecError("unknown sweep variable '" + std::string(name) + "'");
}

bool is_discrete(Scheme s) { return s == Scheme::disc_cem || s == Scheme::disc_proj; }

void apply_sweep(SweepVar var, double value, SceneConfig &config, AlgorithmParams &algo) {
  switch (var) {
  case SweepVar::none:
    break;
  case SweepVar::p_max_dbm:
    config.p_max_dbm = {value};
    break;
  case SweepVar::My:
    config.My = whole_number(value, "My");
    break;
  case SweepVar::p:
    config.p = static_cast<int>(whole_number(value, "p"));
    break;
  case SweepVar::theta_max:
    config.theta_max = value;
    break;
  case SweepVar::N_dir:
    algo.n_dir = whole_number(value, "N_dir");
    break;
  }
}

void check_scheme(Scheme scheme, const SceneConfig &config, const AlgorithmParams &algo) {
  try {
    config.validate();
  } catch (const std::invalid_argument &e) {
    throw SpecError(e.what());
  }
  if ((scheme == Scheme::zf_ra || scheme == Scheme::zf_fixed) && config.M() < config.K)
    throw SpecError("zero-forcing requires M >= K (M = " + std::to_string(config.M()) +
                    ", K = " + std::to_string(config.K) + ")");
  if (is_discrete(scheme)) {
    if (algo.codebook == CodebookKind::fibonacci && algo.n_dir < 1)
      throw SpecError("discrete schemes need a codebook with N_dir >= 1");
    if (algo.codebook == CodebookKind::uniform_grid && (algo.grid_n_theta < 1 || algo.grid_n_phi < 1))
      throw SpecError("discrete schemes need a grid codebook with N_theta >= 1 and N_phi >= 1");
  }
  if (scheme == Scheme::disc_cem) {
    const CemParams &c = algo.cem;
    if (c.samples < 1)
      throw SpecError("CEM needs at least one sample per iteration");
    if (c.elite_fraction * static_cast<double>(c.samples) < 1.0 - 1e-12)
      throw SpecError("CEM elite_fraction * samples must be >= 1");
    if (!(c.smoothing >= 0.0 && c.smoothing <= 1.0))
      throw SpecError("CEM smoothing must lie in [0, 1]");
  }
}

Codebook make_codebook(const AlgorithmParams &algo, double theta_max) {
  if (algo.codebook == CodebookKind::uniform_grid)
    return uniform_grid_codebook(algo.grid_n_theta, algo.grid_n_phi, theta_max);
  return fibonacci_codebook(algo.n_dir, theta_max);
}

SchemeOutcome run_scheme(Scheme scheme, const SceneConfig &config, const Topology &topology,
                         const AlgorithmParams &algo) {
  check_scheme(scheme, config, algo);
  const std::size_t K = config.K;
  const std::size_t M = config.M();
  const OrientationSet upright(K, M);

  switch (scheme) {
  case Scheme::wmmse_ra: {
    const AoResult ao = ao_solve(config, topology, algo.ao);
    return evaluate_fixed(config, topology, ao.beamformers, ao.orientations, ao.iterations);
  }
  case Scheme::mrt_ra:
  case Scheme::zf_ra: {
    const LinearRaResult r = optimize_orientations_linear(
        config, topology, scheme == Scheme::mrt_ra ? LinearScheme::mrt : LinearScheme::zf, algo.linear);
    return evaluate_fixed(config, topology, r.beamformers, r.orientations, r.fw.iterations);
  }
  case Scheme::wmmse_fixed:
  case Scheme::isotropic_fixed: {
    SceneConfig c = config;
    if (scheme == Scheme::isotropic_fixed)
      c.p = 0;
    const ChannelModel model(topology, c);
    const WmmseState s =
        wmmse_solve(model.evaluate(upright), c.noise_mw(), c.weights(), c.budgets_mw(), algo.ao.wmmse);
    return evaluate_fixed(c, topology, s.w, upright, s.sweeps);
  }
  case Scheme::mrt_fixed:
  case Scheme::zf_fixed: {
    const ChannelModel model(topology, config);
    const ChannelTensor H = model.evaluate(upright);
    const LinearBeamforming bf =
        scheme == Scheme::mrt_fixed ? mrt(H, config.budgets_mw()) : zf(H, config.budgets_mw());
    return evaluate_fixed(config, topology, bf.bf, upright, 0);
  }
  case Scheme::disc_cem: {
    const Codebook cb = make_codebook(algo, config.theta_max);
    const CemResult r = cem_solve(config, topology, cb, algo.cem, config.seed + kCemSeedOffset);
    return evaluate_fixed(config, topology, r.beamformers, r.orientations, r.iterations);
  }
  case Scheme::disc_proj: {
    const Codebook cb = make_codebook(algo, config.theta_max);
    const AoResult ao = ao_solve(config, topology, algo.ao);
    const OrientationSet F = nearest_projection(ao.orientations, cb);
    const ChannelModel model(topology, config);
    const WmmseState s =
        wmmse_solve(model.evaluate(F), config.noise_mw(), config.weights(), config.budgets_mw(), algo.ao.wmmse);
    return evaluate_fixed(config, topology, s.w, F, ao.iterations);
  }
  }
  throw std::logic_error("unhandled scheme");
}

void validate_spec(const ExperimentSpec &spec) {
  if (spec.schemes.empty())
    throw SpecError("at least one scheme is required");
  if (spec.trials < 1)
    throw SpecError("trials must be >= 1");
  if (spec.sweep != SweepVar::none && spec.values.empty())
    throw SpecError("sweep '" + std::string(sweep_name(spec.sweep)) + "' needs at least one value");
  if (spec.sweep == SweepVar::N_dir && spec.algo.codebook != CodebookKind::fibonacci)
    throw SpecError("N_dir sweep requires the fibonacci codebook");
  for (double v : sweep_points(spec)) {
    SceneConfig config = spec.base;
    AlgorithmParams algo = spec.algo;
    apply_sweep(spec.sweep, v, config, algo);
    for (Scheme s : spec.schemes) {
      try {
        check_scheme(s, config, algo);
      } catch (const SpecError &e) {
        std::string where = std::string(scheme_name(s));
        if (spec.sweep != SweepVar::none)
          where += " at " + std::string(sweep_name(spec.sweep)) + " = " + fixed9(v);
        throw SpecError(where + ": " + e.what());
      }
    }
  }
}

ExperimentResult run_experiment(const ExperimentSpec &spec) {
  validate_spec(spec);
  const std::vector<double> points = sweep_points(spec);

  struct Job {
    Scheme scheme;
    double value;
    std::uint64_t trial;
  };
  std::vector<Job> jobs;
  for (Scheme s : spec.schemes)
    for (double v : points)
      for (std::uint64_t t = 0; t < spec.trials; ++t)
        jobs.push_back({s, v, t});

  ExperimentResult result;
  result.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size())
        return;
      try {
        const Job &job = jobs[i];
        SceneConfig config = spec.base;
        AlgorithmParams algo = spec.algo;
        apply_sweep(spec.sweep, job.value, config, algo);
        config.seed = spec.base.seed + job.trial;
        const auto t0 = std::chrono::steady_clock::now();
        const Topology topo = generate_topology(config);
        const SchemeOutcome out = run_scheme(job.scheme, config, topo, algo);
        const auto t1 = std::chrono::steady_clock::now();

        ResultRow &row = result.rows[i];
        row.scheme = std::string(scheme_name(job.scheme));
        row.sweep_var = std::string(sweep_name(spec.sweep));
        row.sweep_value = job.value;
        row.seed = config.seed;
        row.wsr = out.wsr;
        row.rates = out.rates;
        row.iterations = out.iterations;
        row.seconds = spec.record_timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  unsigned n_threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, jobs.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back(worker);
    for (std::thread &th : pool)
      th.join();
  }
  if (failure)
    std::rethrow_exception(failure);

  result.summary = summarize(result.rows);
  return result;
}

std::vector<SummaryCell> summarize(const std::vector<ResultRow> &rows) {
  std::vector<SummaryCell> cells;
  std::vector<std::vector<double>> samples;
  for (const ResultRow &r : rows) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const SummaryCell &c) {
      return c.scheme == r.scheme && c.sweep_var == r.sweep_var && c.sweep_value == r.sweep_value;
    });
    if (it == cells.end()) {
      cells.push_back({r.scheme, r.sweep_var, r.sweep_value, 0.0, 0.0, 0});
      samples.emplace_back();
      it = cells.end() - 1;
    }
    samples[static_cast<std::size_t>(it - cells.begin())].push_back(r.wsr);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::vector<double> &x = samples[i];
    double sum = 0.0;
    for (double v : x)
      sum += v;
    const double mean = sum / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x)
      ss += (v - mean) * (v - mean);
    cells[i].mean = mean;
    cells[i].stddev = x.size() > 1 ? std::sqrt(ss / static_cast<double>(x.size() - 1)) : 0.0;
    cells[i].count = x.size();
  }
  return cells;
}

std::string results_to_csv(const std::vector<ResultRow> &rows, std::size_t K) {
  std::string out = "scheme,sweep_var,sweep_value,seed,wsr";
  for (std::size_t k = 1; k <= K; ++k)
    out += ",rate_" + std::to_string(k);
  out += ",iters,seconds\n";
  for (const ResultRow &r : rows) {
    out += r.scheme + ',' + r.sweep_var + ',' + fixed9(r.sweep_value) + ',' + std::to_string(r.seed) + ',' +
           fixed9(r.wsr);
    for (std::size_t k = 0; k < K; ++k)
      out += ',' + (k < r.rates.size() ? fixed9(r.rates[k]) : std::string());
    out += ',' + std::to_string(r.iterations) + ',' + fixed9(r.seconds) + '\n';
  }
  return out;
}

std::string summary_to_csv(const std::vector<SummaryCell> &cells) {
  std::string out = "scheme,sweep_var,sweep_value,mean_wsr,std_wsr,count\n";
  for (const SummaryCell &c : cells)
    out += c.scheme + ',' + c.sweep_var + ',' + fixed9(c.sweep_value) + ',' + fixed9(c.mean) + ',' +
           fixed9(c.stddev) + ',' + std::to_string(c.count) + '\n';
  return out;
}

std::string results_to_json(const std::vector<ResultRow> &rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ResultRow &r : rows)
    arr.push_back({{"scheme", r.scheme},
                   {"sweep_var", r.sweep_var},
                   {"sweep_value", r.sweep_value},
                   {"seed", r.seed},
                   {"wsr", r.wsr},
                   {"rates", r.rates},
                   {"iters", r.iterations},
                   {"seconds", r.seconds}});
  return arr.dump(2) + '\n';
}

std::vector<ResultRow> results_from_json(std::string_view text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  if (!arr.is_array())
    throw std::invalid_argument("results JSON must be an array");
  std::vector<ResultRow> rows;
  for (const nlohmann::json &j : arr) {
    ResultRow r;
    r.scheme = j.at("scheme").get<std::string>();
    r.sweep_var = j.at("sweep_var").get<std::string>();
    r.sweep_value = j.at("sweep_value").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wsr = j.at("wsr").get<double>();
    r.rates = j.at("rates").get<std::vector<double>>();
    r.iterations = j.at("iters").get<int>();
    r.seconds = j.at("seconds").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_text_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out)
    throw std::runtime_error("write to '" + path + "' failed: " + std::strerror(errno));
}

std::vector<TraceRow> convergence_trace(const ExperimentSpec &spec) {
  if (spec.schemes.size() != 1 || (spec.schemes[0] != Scheme::wmmse_ra && spec.schemes[0] != Scheme::disc_cem))
    throw SpecError("convergence traces need exactly one scheme, wmmse_ra or disc_cem");
  const Scheme scheme = spec.schemes[0];
  check_scheme(scheme, spec.base, spec.algo);
  const Topology topo = generate_topology(spec.base);

  std::vector<TraceRow> rows;
  if (scheme == Scheme::wmmse_ra) {
    const AoResult ao = ao_solve(spec.base, topo, spec.algo.ao);
    for (const AoTraceEntry &e : ao.trace)
      rows.push_back({e.iteration, e.wsr, e.gap, e.step});
  } else {
    const Codebook cb = make_codebook(spec.algo, spec.base.theta_max);
    const CemResult r = cem_solve(spec.base, topo, cb, spec.algo.cem, spec.base.seed + kCemSeedOffset);
    for (std::size_t i = 1; i < r.best_trace.size(); ++i)
      rows.push_back({static_cast<int>(i), r.best_trace[i], 0.0, 0.0});
  }
  return rows;
}

std::string trace_to_csv(const std::vector<TraceRow> &rows) {
  std::string out = "iteration,wsr,gap,step\n";
  for (const TraceRow &r : rows)
    out += std::to_string(r.iteration) + ',' + fixed9(r.wsr) + ',' + fixed9(r.gap) + ',' + fixed9(r.step) + '\n';
  return out;
}

bool apply_spec_key(ExperimentSpec &spec, const std::string &key, const std::string &value) {
  AlgorithmParams &a = spec.algo;
  if (key == "scheme" || key == "schemes") {
    spec.schemes.clear();
    for (const std::string &name : split_list(value))
      spec.schemes.push_back(parse_scheme(name));
  } else if (key == "sweep") {
    spec.sweep = parse_sweep(trim(value));
  } else if (key == "values") {
    spec.values = parse_real_list(value);
  } else if (key == "trials") {
    spec.trials = parse_unsigned(value);
  } else if (key == "threads") {
    spec.threads = static_cast<unsigned>(parse_unsigned(value));
  } else if (key == "timing") {
    const std::string v = trim(value);
    if (v != "true" && v != "false")
      throw std::invalid_argument("timing must be true or false");
    spec.record_timing = v == "true";
  } else if (key == "codebook") {
    const std::string v = trim(value);
    if (v == "fibonacci")
      a.codebook = CodebookKind::fibonacci;
    else if (v == "grid")
      a.codebook = CodebookKind::uniform_grid;
    else
      throw std::invalid_argument("codebook must be fibonacci or grid");
  } else if (key == "N_dir") {
    a.n_dir = parse_unsigned(value);
  } else if (key == "N_theta") {
    a.grid_n_theta = parse_unsigned(value);
  } else if (key == "N_phi") {
    a.grid_n_phi = parse_unsigned(value);
  } else if (key == "ao_tol") {
    a.ao.tol = parse_real(value);
  } else if (key == "ao_max_iter") {
    a.ao.max_iter = static_cast<int>(parse_unsigned(value));
  } else if (key == "wmmse_tol") {
    a.ao.wmmse.tol = parse_real(value);
  } else if (key == "wmmse_max_iter") {
    a.ao.wmmse.max_iter = static_cast<int>(parse_unsigned(value));
  } else if (key == "fw_tol") {
    a.ao.fw.tol = a.linear.fw.tol = parse_real(value);
  } else if (key == "fw_max_iter") {
    a.ao.fw.max_iter = a.linear.fw.max_iter = static_cast<int>(parse_unsigned(value));
  } else if (key == "armijo_c") {
    a.ao.fw.armijo.c_a = a.linear.fw.armijo.c_a = parse_real(value);
  } else if (key == "armijo_beta") {
    a.ao.fw.armijo.beta = a.linear.fw.armijo.beta = parse_real(value);
  } else if (key == "fd_step") {
    a.linear.fd_step = parse_real(value);
  } else if (key == "cem_samples") {
    a.cem.samples = parse_unsigned(value);
  } else if (key == "cem_elite_fraction") {
    a.cem.elite_fraction = parse_real(value);
  } else if (key == "cem_smoothing") {
    a.cem.smoothing = parse_real(value);
  } else if (key == "cem_max_iter") {
    a.cem.max_iter = static_cast<int>(parse_unsigned(value));
  } else {
    return apply_scene_key(spec.base, key, value);
  }
  return true;
}

ExperimentSpec parse_experiment_spec(std::string_view text, ExperimentSpec base) {
  KeyValues kv;
  try {
    kv = parse_key_values(text);
  } catch (const std::invalid_argument &e) {
    throw SpecError(e.what());
  }
  for (const auto &[key, value] : kv) {
    bool known = false;
    try {
      known = apply_spec_key(base, key, value);
    } catch (const SpecError &) {
      throw;
    } catch (const std::invalid_argument &e) {
      throw SpecError("key '" + key + "': " + e.what());
    }
    if (!known)
      throw SpecError("unknown key '" + key + "'");
  }
  return base;
}

} // namespace raopt
