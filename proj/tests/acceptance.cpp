// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "onebit/harness.hpp"
#include "onebit/measurement.hpp"
#include "onebit/nets.hpp"
#include "onebit/processes.hpp"
#include "onebit/verify.hpp"

using namespace onebit;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

unsigned hw_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentConfig base(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  c.seed = 1;
  c.threads = hw_threads();
  return c;
}

const ExperimentSummary& only(const RunResult& r) { return r.summaries.at(0); }

std::string rate(const ExperimentSummary& s) {
  return std::to_string(s.passed) + "/" + std::to_string(s.trials);
}

// --- criteria ---------------------------------------------------------------

Verdict ac1() {
  ExperimentConfig c = base(Experiment::Crofton);
  c.n = 3;
  c.m = 100000;
  c.trials = 20;
  const auto& s = only(run_experiments(c));
  return {s.passed >= 19, rate(s) + " pairs within 3 sigma of d (need 19)"};
}

Verdict ac2() {
  ExperimentConfig c = base(Experiment::Transversal);
  c.n = 3;
  c.m = 100000;
  c.trials = 20;
  const auto& s = only(run_experiments(c));
  return {s.passed >= 19, rate(s) + " pairs within 3 sigma of d/4 (need 19)"};
}

Verdict ac3() {
  Rng rng = Rng(1).derive("ac3");
  const UnitVector x = sample_uniform_sphere(9, rng);
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::Gaussian, 9, 100000, rng);
  const double mean_abs = sign_product_statistic(ens, x, x).statistic + kSignProductLambda;
  const double err = std::abs(mean_abs - 0.7978845608);
  return {err <= 0.01, "(1/m) sum |<x,g>| = " + fmt("%.6f", mean_abs) + ", error " + fmt("%.2e", err)};
}

Verdict ac4() {
  ExperimentConfig c = base(Experiment::Rip);
  c.n = 64;
  c.s = 4;
  c.delta = 0.2;
  c.net_size = 200;
  c.trials = 50;
  const RunResult r = run_experiments(c);
  const auto& s = only(r);
  c.m = 100;
  const auto& neg = only(run_experiments(c));
  const bool ok = s.pass_rate >= 0.9 && neg.pass_rate <= 0.5;
  return {ok, "m=" + std::to_string(r.configs[0].m) + " pass " + rate(s) + " (need 0.9); m=100 pass " + rate(neg) +
                  " (need <= 0.5)"};
}

Verdict ac5() {
  ExperimentConfig c = base(Experiment::SignProduct);
  c.n = 64;
  c.s = 4;
  c.delta = 0.2;
  c.net_size = 200;
  c.trials = 50;
  const RunResult r = run_experiments(c);
  const auto& s = only(r);
  return {s.pass_rate >= 0.9, "m=" + std::to_string(r.configs[0].m) + " sup <= 0.2 in " + rate(s) + " (need 0.9)"};
}

Verdict ac6() {
  ExperimentConfig c = base(Experiment::SmallCells);
  c.n = 16;
  c.delta = 0.3;
  c.net_size = 300;
  c.safety = 20;
  c.trials = 50;
  const RunResult r = run_experiments(c);
  const auto& s = only(r);
  const bool ok = s.pass_rate >= 0.9 && s.invariant_violations == 0;
  return {ok, "m=" + std::to_string(r.configs[0].m) + " small cells in " + rate(s) + " (need 0.9); " +
                  std::to_string(s.invariant_violations) + " trials where doubling m grew a cell"};
}

Verdict ac7() {
  Rng rng = Rng(1).derive("ac7");
  int var_ok = 0;
  int cov_ok = 0;
  double worst_var = 0.0;
  for (int i = 0; i < 20; ++i) {
    Rng pair_rng = rng.derive("pair", static_cast<std::uint64_t>(i));
    const UnitVector x = sample_uniform_sphere(9, pair_rng);
    const UnitVector y = sample_uniform_sphere(9, pair_rng);
    const HemisphereMoments mo = empirical_hemisphere_moments(x, y, 10000, 10000, pair_rng, Workers{hw_threads()});
    const double rel = std::max(std::abs(mo.variance_x - 0.25), std::abs(mo.variance_y - 0.25)) / 0.25;
    worst_var = std::max(worst_var, rel);
    var_ok += rel <= 0.05 ? 1 : 0;
    cov_ok += std::abs(mo.covariance - hemisphere_covariance(x, y)) <= 3.0 * mo.covariance_se ? 1 : 0;
  }
  int agree = 0;
  double worst_z = 0.0;
  for (int i = 0; i < 20; ++i) {
    Rng set_rng = rng.derive("set", static_cast<std::uint64_t>(i));
    const PointSet pts = sample_uniform_points(4, 100, set_rng);
    const WidthEstimate chol = estimate_hemisphere_width_cholesky(pts, 2000, set_rng, Workers{hw_threads()});
    const WidthEstimate emp = estimate_hemisphere_width_empirical(pts, 10000, 200, set_rng, Workers{hw_threads()});
    const double joint = std::sqrt(chol.std_error * chol.std_error + emp.std_error * emp.std_error);
    const double z = std::abs(chol.value - emp.value) / joint;
    worst_z = std::max(worst_z, z);
    agree += z <= 3.0 ? 1 : 0;
  }
  const bool ok = var_ok == 20 && cov_ok == 20 && agree == 20;
  return {ok, "variance within 5% for " + std::to_string(var_ok) + "/20 (worst " + fmt("%.2f%%", 100 * worst_var) +
                  "), covariance within 3 sigma for " + std::to_string(cov_ok) + "/20, Cholesky vs empirical H " +
                  std::to_string(agree) + "/20 (worst " + fmt("%.2f", worst_z) + " sigma)"};
}

struct WidthCase {
  int n = 0;
  int s = 0;
  PointSet points;
  WidthEstimate gaussian;
  double ratio = 0.0;
};

std::vector<WidthCase> g_width_cases;

Verdict ac8() {
  const std::vector<std::pair<int, int>> configs{{64, 2}, {64, 4}, {256, 4}, {256, 8}};
  bool ok = true;
  std::string detail;
  g_width_cases.clear();
  for (auto [n, s] : configs) {
    Rng rng = Rng(1).derive("ac8", static_cast<std::uint64_t>(n * 1000 + s));
    WidthCase wc;
    wc.n = n;
    wc.s = s;
    wc.points = sample_sparse_points({n, s}, 2000, rng);
    wc.gaussian = estimate_gaussian_width(wc.points, 2000, rng, Workers{hw_threads()});
    wc.ratio = wc.gaussian.value * wc.gaussian.value / (s * std::log(static_cast<double>(n) / s));
    ok = ok && wc.ratio >= 0.2 && wc.ratio <= 5.0;
    detail += "(" + std::to_string(n) + "," + std::to_string(s) + ") ratio " + fmt("%.3f", wc.ratio) + "; ";
    g_width_cases.push_back(std::move(wc));
  }
  return {ok, detail + "need [0.2, 5]"};
}

Verdict ac9() {
  if (g_width_cases.empty()) return {false, "width estimates unavailable"};
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.05 * i);
  bool ok = true;
  std::string detail;
  for (const WidthCase& wc : g_width_cases) {
    Rng rng = Rng(1).derive("ac9", static_cast<std::uint64_t>(wc.n * 1000 + wc.s));
    const WidthEstimate h = estimate_hemisphere_width_cholesky(wc.points, 2000, rng, Workers{hw_threads()});
    const SudakovReport g = sudakov_check(wc.points, ProcessMetric::GaussianMetric, grid, wc.gaussian);
    const SudakovReport hm = sudakov_check(wc.points, ProcessMetric::HemisphereMetric, grid, h);
    const CompareReport chain = comparison_check(wc.points, grid, wc.gaussian.value, h.value);
    const bool case_ok = g.max_ratio <= 3.0 && hm.max_ratio <= 3.0 && chain.holds();
    ok = ok && case_ok;
    detail += "(" + std::to_string(wc.n) + "," + std::to_string(wc.s) + ") " + fmt("%.3f", g.max_ratio) + "/" +
              fmt("%.3f", hm.max_ratio) + (chain.holds() ? " chain ok; " : " chain broken; ");
  }
  return {ok, "max ratios gaussian/hemisphere " + detail + "need <= 3"};
}

Verdict ac10() {
  Rng rng = Rng(1).derive("ac10");
  bool ok = true;
  std::string detail = "basis sets shattered for n =";
  for (int n = 2; n <= 5; ++n) {
    const bool sh = shatter_check(basis_shatter_set(n), rng).shattered;
    ok = ok && sh;
    if (sh) detail += " " + std::to_string(n);
  }
  const double bound = sauer_bound(8, 3);
  std::uint64_t worst = 0;
  for (int i = 0; i < 10; ++i) {
    const VcReport r = shatter_check(sample_uniform_points(2, 8, rng), rng);
    worst = std::max(worst, r.dichotomies_realized);
  }
  ok = ok && static_cast<double>(worst) <= bound;
  return {ok, detail + "; 8 random points on S^2: at most " + std::to_string(worst) + " dichotomies, Sauer bound " +
                  fmt("%.1f", bound)};
}

Verdict ac11() {
  std::size_t violations = 0;
  std::size_t checks = 0;
  std::string detail;
  for (Experiment e : {Experiment::Nets, Experiment::MetricRatio, Experiment::Sudakov}) {
    ExperimentConfig c = base(e);
    c.delta = 0.2;
    const RunResult r = run_experiments(c);
    violations += only(r).invariant_violations;
    checks += only(r).trials;
    detail += std::string(experiment_name(e)) + " " + std::to_string(only(r).trials) + " trials; ";
  }
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.05 * i);
  Rng rng = Rng(1).derive("ac11");
  for (const WidthCase& wc : g_width_cases) {
    for (double d : grid) {
      violations += capacity_sandwich(wc.points, d, rng).holds() ? 0 : 1;
      ++checks;
    }
  }
  for (int i = 0; i < 10; ++i) {
    const PointSet net = sparse_net({64, 4}, 200, kDefaultPerturbations, rng);
    violations += capacity_sandwich(net, 0.2, rng).holds() ? 0 : 1;
    ++checks;
  }
  return {violations == 0, std::to_string(violations) + " sandwich violations in " + std::to_string(checks) +
                               " checks (" + detail + "width nets, K_s nets)"};
}

Verdict ac12() {
  const std::vector<std::string> small = {"--trials", "3", "--delta", "0.3", "--net-size", "60",
                                          "--inner-trials", "200", "--seed", "2024"};
  std::size_t compared = 0;
  std::string mismatched;
  for (Experiment e : concrete_experiments()) {
    for (const char* format : {"csv", "json"}) {
      std::string reference;
      for (const char* threads : {"1", "2", "4", "8", "1"}) {
        std::vector<std::string> args{"onebit", experiment_name(e)};
        args.insert(args.end(), small.begin(), small.end());
        args.insert(args.end(), {"--format", format, "--threads", threads});
        std::ostringstream out;
        std::ostringstream err;
        const int status = run_cli(args, out, err);
        if (status == 2 || status == 3) return {false, std::string(experiment_name(e)) + ": " + err.str()};
        if (reference.empty()) {
          reference = out.str();
        } else if (out.str() != reference) {
          mismatched += std::string(" ") + experiment_name(e) + "/" + format + "@" + threads;
        }
        ++compared;
      }
    }
  }
  return {mismatched.empty(), std::to_string(compared) + " reports compared at 1, 2, 4, 8 threads and rerun" +
                                  (mismatched.empty() ? "" : "; differing:" + mismatched)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "crofton identity", 10, ac1},
      {"AC2", "transversal probability", 30, ac2},
      {"AC3", "sign-product constant", 5, ac3},
      {"AC4", "one-bit RIP", 120, ac4},
      {"AC5", "sign-product RIP", 180, ac5},
      {"AC6", "small cells", 120, ac6},
      {"AC7", "hemisphere process", 120, ac7},
      {"AC8", "width scaling", 180, ac8},
      {"AC9", "sudakov and comparison", 120, ac9},
      {"AC10", "VC dimension of caps", 60, ac10},
      {"AC11", "packing/covering sandwich", 0, ac11},
      {"AC12", "determinism", 0, ac12},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.1f s", secs);
    if (c.limit_s > 0) {
      timing += fmt(", limit %.0f s", c.limit_s);
      if (secs > c.limit_s) {
        v.pass = false;
        timing += " exceeded";
      }
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s %s %s: %s [%s]\n", c.id, v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
