// SPDX-License-Identifier: Apache-2.0
//
// raopt: run experiment sweeps, convergence traces, codebook and topology dumps.
//
//   raopt run tools/specs/fig_pmax.cfg --out pmax.csv
//   raopt run --scheme wmmse_ra,wmmse_fixed --sweep p --values 1,3,5 --trials 5
//   raopt trace --scheme disc_cem --set N_dir=100
//   raopt codebook --kind fibonacci --size 25 --theta-max pi/3
//   raopt topology --seed 7
//
// Exit status: 0 success, 2 invalid spec or arguments, 1 runtime failure.

#include "raopt/config.hpp"
#include "raopt/discrete.hpp"
#include "raopt/export.hpp"
#include "raopt/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct SpecOptions {
  std::string file;
  std::string scheme;
  std::string sweep;
  std::string values;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::vector<std::string> set;
  bool timing = false;
};

void add_spec_options(CLI::App *cmd, SpecOptions &o, bool with_sweep) {
  cmd->add_option("spec", o.file, "key = value experiment spec file");
  cmd->add_option("--scheme", o.scheme, "scheme name or comma-separated list");
  if (with_sweep) {
    cmd->add_option("--sweep", o.sweep, "sweep variable: p_max_dbm, My, p, theta_max, N_dir, none");
    cmd->add_option("--values", o.values, "comma-separated sweep values");
    cmd->add_option("--trials", o.trials, "number of seeded trials per sweep point");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    cmd->add_flag("--timing", o.timing, "record wall-clock seconds per row");
  }
  cmd->add_option("--seed", o.seed, "base topology seed");
  cmd->add_option("--set", o.set, "extra key=value overrides (repeatable)");
}

raopt::ExperimentSpec build_spec(const SpecOptions &o) {
  raopt::ExperimentSpec spec;
  if (!o.file.empty())
    spec = raopt::parse_experiment_spec(raopt::read_text_file(o.file));
  std::string overrides;
  for (const std::string &kv : o.set)
    overrides += kv + '\n';
  spec = raopt::parse_experiment_spec(overrides, spec);
  if (!o.scheme.empty())
    raopt::apply_spec_key(spec, "scheme", o.scheme);
  if (!o.sweep.empty())
    raopt::apply_spec_key(spec, "sweep", o.sweep);
  if (!o.values.empty())
    raopt::apply_spec_key(spec, "values", o.values);
  if (o.trials)
    spec.trials = *o.trials;
  if (o.seed)
    spec.base.seed = *o.seed;
  if (o.threads)
    spec.threads = *o.threads;
  if (o.timing)
    spec.record_timing = true;
  return spec;
}

void emit(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-")
    std::fwrite(content.data(), 1, content.size(), stdout);
  else
    raopt::write_text_file(path, content);
}

int run(const SpecOptions &o, const std::string &out, const std::string &format, const std::string &summary_out) {
  const raopt::ExperimentSpec spec = build_spec(o);
  raopt::validate_spec(spec);
  const raopt::ExperimentResult res = raopt::run_experiment(spec);
  emit(out, format == "json" ? raopt::results_to_json(res.rows) : raopt::results_to_csv(res.rows, spec.base.K));
  if (!summary_out.empty())
    emit(summary_out, raopt::summary_to_csv(res.summary));
  else
    std::cerr << raopt::summary_to_csv(res.summary);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Joint beamforming and antenna-orientation optimization for MISO interference channels"};
  app.require_subcommand(1);

  SpecOptions run_opts;
  std::string out, format = "csv", summary_out;
  CLI::App *run_cmd = app.add_subcommand("run", "Monte-Carlo sweep; one row per scheme, sweep value and trial");
  add_spec_options(run_cmd, run_opts, true);
  run_cmd->add_option("--out", out, "output path (default stdout)");
  run_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--summary", summary_out, "mean/std summary CSV path (default stderr)");

  SpecOptions trace_opts;
  std::string trace_out;
  CLI::App *trace_cmd = app.add_subcommand("trace", "per-iteration convergence of wmmse_ra or disc_cem");
  add_spec_options(trace_cmd, trace_opts, false);
  trace_cmd->add_option("--out", trace_out, "output path (default stdout)");

  std::string cb_kind = "fibonacci", cb_theta = "pi/3", cb_out;
  std::size_t cb_size = 25, cb_n_theta = 5, cb_n_phi = 5;
  CLI::App *cb_cmd = app.add_subcommand("codebook", "orientation codebook as CSV (index,theta,phi,x,y,z)");
  cb_cmd->add_option("--kind", cb_kind, "fibonacci or grid")->check(CLI::IsMember({"fibonacci", "grid"}));
  cb_cmd->add_option("--size", cb_size, "Fibonacci codebook size");
  cb_cmd->add_option("--n-theta", cb_n_theta, "grid zenith levels");
  cb_cmd->add_option("--n-phi", cb_n_phi, "grid azimuth levels");
  cb_cmd->add_option("--theta-max", cb_theta, "cap half-angle, e.g. pi/3");
  cb_cmd->add_option("--out", cb_out, "output path (default stdout)");

  std::string topo_file, topo_out;
  std::optional<std::uint64_t> topo_seed;
  std::vector<std::string> topo_set;
  CLI::App *topo_cmd = app.add_subcommand("topology", "random topology as JSON");
  topo_cmd->add_option("spec", topo_file, "key = value scene file");
  topo_cmd->add_option("--seed", topo_seed, "topology seed");
  topo_cmd->add_option("--set", topo_set, "extra key=value overrides (repeatable)");
  topo_cmd->add_option("--out", topo_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd)
      return run(run_opts, out, format, summary_out);
    if (*trace_cmd) {
      const raopt::ExperimentSpec spec = build_spec(trace_opts);
      emit(trace_out, raopt::trace_to_csv(raopt::convergence_trace(spec)));
      return 0;
    }
    if (*cb_cmd) {
      const double theta_max = raopt::parse_real(cb_theta);
      const raopt::Codebook cb = cb_kind == "grid" ? raopt::uniform_grid_codebook(cb_n_theta, cb_n_phi, theta_max)
                                                   : raopt::fibonacci_codebook(cb_size, theta_max);
      emit(cb_out, cb.to_csv());
      return 0;
    }
    if (*topo_cmd) {
      raopt::SceneConfig config;
      if (!topo_file.empty())
        config = raopt::parse_scene_config(raopt::read_text_file(topo_file));
      std::string overrides;
      for (const std::string &kv : topo_set)
        overrides += kv + '\n';
      config = raopt::parse_scene_config(overrides, config);
      if (topo_seed)
        config.seed = *topo_seed;
      config.validate();
      emit(topo_out, raopt::topology_to_json(config, raopt::generate_topology(config)));
      return 0;
    }
  } catch (const raopt::SpecError &e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
