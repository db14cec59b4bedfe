#pragma once

// Experiment configuration, seeded parallel trial execution and CSV / JSON
// report emission for the onebit command line tool.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "onebit/errors.hpp"
#include "onebit/rng.hpp"

namespace onebit {

enum class Experiment {
  Crofton,
  Transversal,
  SmallCells,
  Rip,
  SignProduct,
  LinearRip,
  Widths,
  Sudakov,
  Vc,
  Nets,
  MetricRatio,
  Embed,
  All,
};

const char* experiment_name(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
/// Every concrete experiment, in the order `all` runs them.
const std::vector<Experiment>& concrete_experiments();

enum class OutputFormat { Csv, Json };

/// Raised for invalid configurations; the CLI maps it to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Values given on the command line or in a config file. Unset fields take
/// per-experiment defaults when resolved.
struct ExperimentConfig {
  Experiment experiment = Experiment::All;
  std::optional<int> n;
  std::optional<int> s;
  std::optional<std::size_t> m;  ///< unset means "auto"
  std::optional<double> delta;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  double safety = 10.0;
  std::optional<std::size_t> net_size;
  std::string out_path;  ///< empty or "-" writes to stdout
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 1;
  std::optional<std::size_t> inner_trials;
  std::optional<double> min_pass_rate;
};

/// A configuration with every parameter fixed for one experiment.
struct ResolvedConfig {
  Experiment experiment = Experiment::Crofton;
  int n = 0;
  int s = 0;
  std::size_t m = 0;
  bool m_auto = true;
  double delta = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double safety = 0.0;
  std::size_t net_size = 0;
  std::size_t inner_trials = 0;
  double min_pass_rate = 1.0;
};

/// Applies defaults and validates. Throws UsageError.
ResolvedConfig resolve(const ExperimentConfig& config, Experiment e);

/// Statistic names one trial of an experiment emits, in emission order.
std::vector<std::string> statistics_of(Experiment e);

struct ReportRow {
  std::string experiment;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::string statistic;
  double value = 0.0;
  bool pass = false;
};

/// Canonical order: (experiment, seed, trial, statistic).
bool canonical_less(const ReportRow& a, const ReportRow& b);

struct ExperimentSummary {
  std::string experiment;
  std::size_t trials = 0;
  std::size_t passed = 0;
  double pass_rate = 0.0;
  double min_pass_rate = 1.0;
  std::size_t invariant_violations = 0;
  bool ok = false;
};

struct RunResult {
  std::vector<ResolvedConfig> configs;
  std::vector<ReportRow> rows;  ///< canonical order
  std::vector<ExperimentSummary> summaries;
  double pass_rate = 0.0;
  double max_discrepancy = 0.0;
  bool ok = false;
};

/// Outcome of one trial of one experiment.
struct TrialOutcome {
  std::vector<double> values;  ///< one per statistic
  std::vector<bool> passes;    ///< one per statistic
  bool pass = false;
  bool invariants_hold = true;
};

/// Runs a single trial; the stream is derived from (seed, experiment, trial).
TrialOutcome run_trial(const ResolvedConfig& config, std::size_t trial, unsigned inner_threads);

/// Runs every trial of the configured experiment(s) with `threads` workers.
RunResult run_experiments(const ExperimentConfig& config);

std::string format_csv(const RunResult& result);
nlohmann::json report_json(const ExperimentConfig& config, const RunResult& result);

/// Parses argv (argv[0] is the program name). A --config JSON file supplies
/// values that explicit flags override. Throws UsageError.
ExperimentConfig parse_config(const std::vector<std::string>& args);

/// Full CLI: parse, run, write. Returns the exit status
/// (0 pass, 1 fail, 2 usage, 3 I/O).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onebit
