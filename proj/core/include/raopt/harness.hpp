// SPDX-License-Identifier: Apache-2.0
//
// Scheme registry and seeded Monte-Carlo experiments.
//
// Schemes:
//   wmmse_ra         alternating WMMSE / Frank-Wolfe over orientations
//   mrt_ra, zf_ra    Frank-Wolfe over orientations with MRT / ZF beamformers
//   wmmse_fixed      WMMSE with all boresights at +z
//   mrt_fixed, zf_fixed
//   isotropic_fixed  WMMSE with p = 0 elements at +z
//   disc_cem         cross-entropy search over a codebook, WMMSE beamformers
//   disc_proj        wmmse_ra, nearest-codeword projection, one WMMSE re-solve
//
// Trial t of a sweep point uses topology seed base.seed + t, so every scheme
// and every sweep value sees the same set of topologies.

#ifndef RAOPT_HARNESS_HPP
#define RAOPT_HARNESS_HPP

#include "raopt/ao.hpp"
#include "raopt/discrete.hpp"
#include "raopt/scene.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace raopt {

enum class Scheme { wmmse_ra, mrt_ra, zf_ra, wmmse_fixed, mrt_fixed, zf_fixed, isotropic_fixed, disc_cem, disc_proj };
enum class SweepVar { none, p_max_dbm, My, p, theta_max, N_dir };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);
std::string_view sweep_name(SweepVar v);
SweepVar parse_sweep(std::string_view name);
bool is_discrete(Scheme s);

/// Thrown for specs that cannot run; the message names the violated precondition.
class SpecError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct AlgorithmParams {
  AoParams ao;
  LinearRaParams linear;
  CemParams cem;
  CodebookKind codebook = CodebookKind::fibonacci;
  std::size_t n_dir = 25;      // Fibonacci size
  std::size_t grid_n_theta = 5;
  std::size_t grid_n_phi = 5;
};

struct ExperimentSpec {
  std::vector<Scheme> schemes{Scheme::wmmse_ra};
  SweepVar sweep = SweepVar::none;
  std::vector<double> values;  // ignored when sweep == none
  std::size_t trials = 20;
  SceneConfig base;
  AlgorithmParams algo;
  bool record_timing = false;  // wall-clock column; zero when off so output is reproducible
  unsigned threads = 0;        // 0 = hardware concurrency
};

struct ResultRow {
  std::string scheme;
  std::string sweep_var;
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  double wsr = 0.0;
  std::vector<double> rates;
  int iterations = 0;
  double seconds = 0.0;

  bool operator==(const ResultRow &) const = default;
};

struct SummaryCell {
  std::string scheme;
  std::string sweep_var;
  double sweep_value = 0.0;
  double mean = 0.0;
  double stddev = 0.0; // sample standard deviation
  std::size_t count = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows; // ordered by (scheme, sweep value, trial)
  std::vector<SummaryCell> summary;
};

struct SchemeOutcome {
  double wsr = 0.0;
  std::vector<double> rates;
  int iterations = 0;
  BeamformerSet beamformers;
  OrientationSet orientations;
};

/// Applies one sweep value to a copy of the scene/algorithm parameters.
void apply_sweep(SweepVar var, double value, SceneConfig &config, AlgorithmParams &algo);

/// Throws SpecError when a scheme cannot run on `config` (e.g. ZF with M < K).
void check_scheme(Scheme scheme, const SceneConfig &config, const AlgorithmParams &algo);

Codebook make_codebook(const AlgorithmParams &algo, double theta_max);

/// One scheme on one topology; `config.seed` also seeds the CEM stream.
SchemeOutcome run_scheme(Scheme scheme, const SceneConfig &config, const Topology &topology,
                         const AlgorithmParams &algo);

/// Validates every (scheme, sweep value) combination up front.
void validate_spec(const ExperimentSpec &spec);

ExperimentResult run_experiment(const ExperimentSpec &spec);

std::vector<SummaryCell> summarize(const std::vector<ResultRow> &rows);

/// Columns: scheme,sweep_var,sweep_value,seed,wsr,rate_1..rate_K,iters,seconds.
std::string results_to_csv(const std::vector<ResultRow> &rows, std::size_t K);
std::string summary_to_csv(const std::vector<SummaryCell> &cells);
std::string results_to_json(const std::vector<ResultRow> &rows);
std::vector<ResultRow> results_from_json(std::string_view text);

/// Writes `content` to `path`; throws std::runtime_error with the OS message on failure.
void write_text_file(const std::string &path, std::string_view content);

struct TraceRow {
  int iteration = 0;
  double wsr = 0.0;
  double gap = 0.0;
  double step = 0.0;
};

/// Per-iteration convergence record of one run (scheme wmmse_ra or disc_cem)
/// on the topology seeded with spec.base.seed. For wmmse_ra each row is an
/// outer iteration (gap/step of its first Frank-Wolfe step); for disc_cem the
/// wsr is the best-so-far value and gap/step are zero.
std::vector<TraceRow> convergence_trace(const ExperimentSpec &spec);
std::string trace_to_csv(const std::vector<TraceRow> &rows);

/// Builds a spec from flat key-value text (scene keys plus experiment and
/// algorithm keys); unknown keys raise SpecError.
ExperimentSpec parse_experiment_spec(std::string_view text, ExperimentSpec base = {});
/// Applies one experiment/algorithm/scene key; returns false if unknown.
bool apply_spec_key(ExperimentSpec &spec, const std::string &key, const std::string &value);

} // namespace raopt

#endif // RAOPT_HARNESS_HPP
