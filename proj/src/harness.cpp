#include "onebit/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "experiment_table.hpp"
#include "onebit/parallel.hpp"

namespace onebit {

namespace {

using nlohmann::json;

struct HelpRequested {
  std::string text;
  int status = 0;
};

const std::vector<std::string> kConfigKeys = {"experiment", "n",         "s",      "m",            "delta",
                                              "trials",     "seed",      "safety", "net_size",     "out",
                                              "format",     "threads",   "inner_trials", "min_pass_rate"};

std::size_t parse_m(const std::string& text) {
  if (text == "auto") return 0;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("--m must be 'auto' or a positive integer, got '" + text + "'");
  }
  if (pos != text.size() || v == 0 || text.front() == '-') {
    throw UsageError("--m must be 'auto' or a positive integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

void set_m(ExperimentConfig& c, const std::string& text) {
  const std::size_t m = parse_m(text);
  if (m == 0) {
    c.m.reset();
  } else {
    c.m = m;
  }
}

Experiment experiment_or_throw(const std::string& name) {
  auto e = parse_experiment(name);
  if (!e) throw UsageError("unknown experiment '" + name + "'");
  return *e;
}

OutputFormat format_or_throw(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw UsageError("--format must be csv or json, got '" + name + "'");
}

std::uint64_t parse_seed_text(const std::string& text, const char* source) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos, 0);
  } catch (const std::exception&) {
    throw UsageError(std::string(source) + " is not a valid 64-bit seed: '" + text + "'");
  }
  if (pos != text.size() || text.empty() || text.front() == '-') {
    throw UsageError(std::string(source) + " is not a valid 64-bit seed: '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

template <class T>
T json_value(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

/// Applies a config file; returns whether it set a seed.
bool apply_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  bool seeded = false;
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
    if (key == "experiment") {
      c.experiment = experiment_or_throw(json_value<std::string>(value, key));
    } else if (key == "n") {
      c.n = json_value<int>(value, key);
    } else if (key == "s") {
      c.s = json_value<int>(value, key);
    } else if (key == "m") {
      if (value.is_string()) {
        set_m(c, value.get<std::string>());
      } else {
        const auto m = json_value<long long>(value, key);
        if (m < 1) throw UsageError("config key 'm' must be positive or \"auto\"");
        c.m = static_cast<std::size_t>(m);
      }
    } else if (key == "delta") {
      c.delta = json_value<double>(value, key);
    } else if (key == "trials") {
      c.trials = json_value<std::size_t>(value, key);
    } else if (key == "seed") {
      c.seed = value.is_string() ? parse_seed_text(value.get<std::string>(), "config seed")
                                 : json_value<std::uint64_t>(value, key);
      seeded = true;
    } else if (key == "safety") {
      c.safety = json_value<double>(value, key);
    } else if (key == "net_size") {
      c.net_size = json_value<std::size_t>(value, key);
    } else if (key == "out") {
      c.out_path = json_value<std::string>(value, key);
    } else if (key == "format") {
      c.format = format_or_throw(json_value<std::string>(value, key));
    } else if (key == "threads") {
      c.threads = json_value<unsigned>(value, key);
    } else if (key == "inner_trials") {
      c.inner_trials = json_value<std::size_t>(value, key);
    } else if (key == "min_pass_rate") {
      c.min_pass_rate = json_value<double>(value, key);
    }
  }
  return seeded;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json optional_json(const auto& v) { return v ? json(*v) : json(nullptr); }

json resolved_json(const ResolvedConfig& r) {
  json j{{"experiment", experiment_name(r.experiment)},
         {"n", r.n},
         {"trials", r.trials},
         {"seed", r.seed},
         {"safety", r.safety},
         {"min_pass_rate", r.min_pass_rate}};
  const auto& def = detail::definition(r.experiment);
  if (def.s) j["s"] = r.s;
  if (r.m > 0) {
    j["m"] = r.m;
    j["m_auto"] = r.m_auto;
  }
  if (r.delta > 0.0) j["delta"] = r.delta;
  if (def.net_size > 0) j["net_size"] = r.net_size;
  if (def.inner_trials > 0) j["inner_trials"] = r.inner_trials;
  return j;
}

}  // namespace

const char* experiment_name(Experiment e) {
  if (e == Experiment::All) return "all";
  return detail::definition(e).name;
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  if (name == "all") return Experiment::All;
  for (Experiment e : concrete_experiments()) {
    if (name == experiment_name(e)) return e;
  }
  return std::nullopt;
}

const std::vector<Experiment>& concrete_experiments() {
  static const std::vector<Experiment> all = {
      Experiment::Crofton, Experiment::Transversal, Experiment::SmallCells, Experiment::Rip,
      Experiment::SignProduct, Experiment::LinearRip, Experiment::Widths, Experiment::Sudakov,
      Experiment::Vc,      Experiment::Nets,        Experiment::MetricRatio, Experiment::Embed,
  };
  return all;
}

bool canonical_less(const ReportRow& a, const ReportRow& b) {
  return std::tie(a.experiment, a.seed, a.trial, a.statistic) < std::tie(b.experiment, b.seed, b.trial, b.statistic);
}

RunResult run_experiments(const ExperimentConfig& config) {
  RunResult result;
  const std::vector<Experiment> selected =
      config.experiment == Experiment::All ? concrete_experiments() : std::vector<Experiment>{config.experiment};
  for (Experiment e : selected) result.configs.push_back(resolve(config, e));

  struct Job {
    std::size_t config;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < result.configs.size(); ++c) {
    for (std::size_t t = 0; t < result.configs[c].trials; ++t) jobs.push_back({c, t});
  }
  const unsigned threads = std::max(1u, config.threads);
  std::vector<TrialOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), Workers{threads}, [&](std::size_t i) {
    const ResolvedConfig& rc = result.configs[jobs[i].config];
    const auto concurrent = static_cast<unsigned>(std::min<std::size_t>(rc.trials, threads));
    outcomes[i] = run_trial(rc, jobs[i].trial, std::max(1u, threads / std::max(1u, concurrent)));
  });

  std::size_t total_trials = 0;
  std::size_t total_passed = 0;
  bool ok = true;
  for (std::size_t c = 0; c < result.configs.size(); ++c) {
    const ResolvedConfig& rc = result.configs[c];
    const auto& def = detail::definition(rc.experiment);
    ExperimentSummary summary;
    summary.experiment = def.name;
    summary.trials = rc.trials;
    summary.min_pass_rate = rc.min_pass_rate;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].config != c) continue;
      const TrialOutcome& o = outcomes[i];
      summary.passed += o.pass ? 1 : 0;
      summary.invariant_violations += o.invariants_hold ? 0 : 1;
      for (std::size_t s = 0; s < o.values.size(); ++s) {
        result.rows.push_back({def.name, rc.seed, jobs[i].trial, def.stats[s].name, o.values[s], o.passes[s]});
        if (def.stats[s].kind == detail::StatKind::Discrepancy) {
          result.max_discrepancy = std::max(result.max_discrepancy, o.values[s]);
        }
      }
    }
    summary.pass_rate = static_cast<double>(summary.passed) / static_cast<double>(summary.trials);
    const double needed = std::ceil(rc.min_pass_rate * static_cast<double>(rc.trials) - 1e-9);
    summary.ok = static_cast<double>(summary.passed) >= needed && summary.invariant_violations == 0;
    ok = ok && summary.ok;
    total_trials += summary.trials;
    total_passed += summary.passed;
    result.summaries.push_back(summary);
  }
  std::sort(result.rows.begin(), result.rows.end(), canonical_less);
  result.pass_rate = total_trials == 0 ? 0.0 : static_cast<double>(total_passed) / static_cast<double>(total_trials);
  result.ok = ok;
  return result;
}

std::string format_csv(const RunResult& result) {
  std::string out = "experiment,seed,trial,statistic,value,pass\n";
  for (const auto& r : result.rows) {
    out += r.experiment;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.trial);
    out += ',';
    out += r.statistic;
    out += ',';
    out += format_double(r.value);
    out += ',';
    out += r.pass ? "1" : "0";
    out += '\n';
  }
  return out;
}

json report_json(const ExperimentConfig& config, const RunResult& result) {
  json cfg{{"experiment", experiment_name(config.experiment)},
           {"n", optional_json(config.n)},
           {"s", optional_json(config.s)},
           {"m", config.m ? json(*config.m) : json("auto")},
           {"delta", optional_json(config.delta)},
           {"trials", optional_json(config.trials)},
           {"seed", config.seed},
           {"safety", config.safety},
           {"net_size", optional_json(config.net_size)},
           {"format", config.format == OutputFormat::Json ? "json" : "csv"},
           {"inner_trials", optional_json(config.inner_trials)},
           {"min_pass_rate", optional_json(config.min_pass_rate)}};
  json resolved = json::array();
  for (const auto& r : result.configs) resolved.push_back(resolved_json(r));
  cfg["resolved"] = resolved;

  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back(json{{"experiment", r.experiment},
                        {"seed", r.seed},
                        {"trial", r.trial},
                        {"statistic", r.statistic},
                        {"value", r.value},
                        {"pass", r.pass}});
  }
  json experiments = json::array();
  for (const auto& s : result.summaries) {
    experiments.push_back(json{{"experiment", s.experiment},
                               {"trials", s.trials},
                               {"passed", s.passed},
                               {"pass_rate", s.pass_rate},
                               {"min_pass_rate", s.min_pass_rate},
                               {"invariant_violations", s.invariant_violations},
                               {"ok", s.ok}});
  }
  return json{{"config", cfg},
              {"rows", rows},
              {"summary",
               {{"pass_rate", result.pass_rate},
                {"max_discrepancy", result.max_discrepancy},
                {"ok", result.ok},
                {"experiments", experiments}}}};
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Seeded Monte Carlo experiments on one-bit sign maps of the sphere", "onebit"};
  std::string experiment;
  std::string config_path;
  int n = 0;
  int s = 0;
  std::string m;
  double delta = 0.0;
  std::size_t trials = 0;
  std::string seed;
  double safety = 0.0;
  std::size_t net_size = 0;
  std::string out;
  std::string format;
  unsigned threads = 1;
  std::size_t inner_trials = 0;
  double min_pass_rate = 0.0;

  std::string names = "all";
  for (Experiment e : concrete_experiments()) names += std::string("|") + experiment_name(e);
  auto* o_exp = app.add_option("experiment", experiment, "Experiment to run: " + names);
  auto* o_cfg = app.add_option("--config", config_path, "JSON file with default values");
  auto* o_n = app.add_option("--n", n, "Sphere dimension (points live in R^{n+1})");
  auto* o_s = app.add_option("--s", s, "Sparsity");
  auto* o_m = app.add_option("--m", m, "Number of measurements, or 'auto'");
  auto* o_delta = app.add_option("--delta", delta, "Target accuracy in (0, 1)");
  auto* o_trials = app.add_option("--trials", trials, "Independent trials");
  auto* o_seed = app.add_option("--seed", seed, "Master seed (falls back to ONEBIT_SEED)");
  auto* o_safety = app.add_option("--safety", safety, "Multiplier in the 'auto' rules for m");
  auto* o_net = app.add_option("--net-size,--net_size", net_size, "Points per sampled net");
  auto* o_out = app.add_option("--out", out, "Report path ('-' for stdout)");
  auto* o_format = app.add_option("--format", format, "csv or json");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads");
  auto* o_inner = app.add_option("--inner-trials,--inner_trials", inner_trials, "Inner Monte Carlo trials");
  auto* o_rate = app.add_option("--min-pass-rate,--min_pass_rate", min_pass_rate, "Required fraction of passing trials");

  // CLI11 consumes a vector from the back.
  std::vector<std::string> reversed(args.empty() ? args.end() : args.begin() + 1, args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help(), 0};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  ExperimentConfig c;
  c.threads = std::max(1u, std::thread::hardware_concurrency());
  bool seeded = false;
  if (o_cfg->count() > 0) seeded = apply_config_file(c, config_path);
  if (o_exp->count() > 0) c.experiment = experiment_or_throw(experiment);
  if (o_n->count() > 0) c.n = n;
  if (o_s->count() > 0) c.s = s;
  if (o_m->count() > 0) set_m(c, m);
  if (o_delta->count() > 0) c.delta = delta;
  if (o_trials->count() > 0) c.trials = trials;
  if (o_seed->count() > 0) {
    c.seed = parse_seed_text(seed, "--seed");
    seeded = true;
  }
  if (!seeded) {
    if (const char* env = std::getenv("ONEBIT_SEED"); env != nullptr && *env != '\0') {
      c.seed = parse_seed_text(env, "ONEBIT_SEED");
    }
  }
  if (o_safety->count() > 0) c.safety = safety;
  if (o_net->count() > 0) c.net_size = net_size;
  if (o_out->count() > 0) c.out_path = out;
  if (o_format->count() > 0) c.format = format_or_throw(format);
  if (o_threads->count() > 0) c.threads = threads;
  if (o_inner->count() > 0) c.inner_trials = inner_trials;
  if (o_rate->count() > 0) c.min_pass_rate = min_pass_rate;
  if (o_exp->count() == 0 && o_cfg->count() == 0) throw UsageError("no experiment given; use --help for the list");
  if (c.threads == 0) throw UsageError("--threads must be >= 1");
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  RunResult result;
  try {
    config = parse_config(args);
    result = run_experiments(config);
  } catch (const HelpRequested& h) {
    out << h.text;
    return h.status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string text =
      config.format == OutputFormat::Json ? report_json(config, result).dump(2) + "\n" : format_csv(result);
  if (config.out_path.empty() || config.out_path == "-") {
    out << text;
    out.flush();
    if (!out) {
      err << "error: failed to write the report\n";
      return 3;
    }
  } else {
    std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open '" << config.out_path << "' for writing\n";
      return 3;
    }
    file << text;
    file.close();
    if (!file) {
      err << "error: failed to write '" << config.out_path << "'\n";
      return 3;
    }
  }
  for (const auto& s : result.summaries) {
    err << s.experiment << ": " << s.passed << "/" << s.trials << " trials passed (need "
        << s.min_pass_rate << ")";
    if (s.invariant_violations > 0) err << ", " << s.invariant_violations << " invariant violations";
    err << (s.ok ? " PASS" : " FAIL") << "\n";
  }
  return result.ok ? 0 : 1;
}

}  // namespace onebit
