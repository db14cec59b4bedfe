#include <algorithm>
#include <cmath>
#include <string>

#include "experiment_table.hpp"
#include "onebit/measurement.hpp"
#include "onebit/nets.hpp"
#include "onebit/processes.hpp"
#include "onebit/sphere.hpp"
#include "onebit/verify.hpp"

namespace onebit {

namespace detail {

namespace {

using K = StatKind;

const std::vector<ExperimentDef>& table() {
  static const std::vector<ExperimentDef> defs = {
      {Experiment::Crofton, "crofton", 3, std::nullopt, 0, 20, 0, 0.95, false, {{"wedge_error", K::Discrepancy}}},
      {Experiment::Transversal, "transversal", 3, std::nullopt, 0, 20, 0, 0.95, false,
       {{"transversal_error", K::Discrepancy}}},
      {Experiment::SmallCells, "small-cells", 16, 3, 300, 50, 0, 0.9, true,
       {{"max_cell_diameter", K::Check}, {"num_cells", K::Info}, {"doubled_max_cell_diameter", K::Invariant}}},
      {Experiment::Rip, "rip", 64, 4, 200, 50, 0, 0.9, true, {{"sup_discrepancy", K::Discrepancy}}},
      {Experiment::SignProduct, "sign-product", 64, 4, 200, 50, 0, 0.9, true, {{"sup_statistic", K::Discrepancy}}},
      {Experiment::LinearRip, "linear-rip", 64, 4, 200, 50, 0, 0.9, true, {{"sup_discrepancy", K::Discrepancy}}},
      {Experiment::Widths, "widths", 64, 4, 2000, 1, 2000, 1.0, false,
       {{"gaussian_width", K::Info},
        {"gaussian_width_se", K::Info},
        {"hemisphere_width", K::Info},
        {"hemisphere_width_se", K::Info},
        {"width_ratio", K::Check}}},
      {Experiment::Sudakov, "sudakov", 64, 4, 2000, 1, 2000, 1.0, false,
       {{"gaussian_max_ratio", K::Check},
        {"hemisphere_max_ratio", K::Check},
        {"compare_chain", K::Check},
        {"sandwich_ok", K::Invariant}}},
      {Experiment::Vc, "vc", 3, std::nullopt, 40, 10, 2000, 1.0, false,
       {{"basis_shattered", K::Check},
        {"radon_shattered", K::Check},
        {"random_dichotomies", K::Check},
        {"sauer_bound", K::Info},
        {"vc_entropy_max_ratio", K::Check}}},
      {Experiment::Nets, "nets", 16, 2, 2000, 5, 0, 1.0, true,
       {{"packing_at_2delta", K::Info},
        {"covering", K::Info},
        {"packing_at_delta", K::Info},
        {"sandwich_ok", K::Invariant},
        {"entropy_ratio", K::Info}}},
      {Experiment::MetricRatio, "metric-ratio", 16, 3, 500, 50, 0, 0.9, true,
       {{"sup_ratio", K::Check}, {"num_centers", K::Info}, {"sandwich_ok", K::Invariant}}},
      {Experiment::Embed, "embed", 9, std::nullopt, 100, 50, 0, 0.9, true, {{"sup_discrepancy", K::Discrepancy}}},
  };
  return defs;
}

constexpr std::size_t kCroftonM = 100000;
const std::vector<double> kSudakovGrid = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};

}  // namespace

const ExperimentDef& definition(Experiment e) {
  for (const auto& d : table()) {
    if (d.experiment == e) return d;
  }
  throw UsageError("no definition for the requested experiment");
}

}  // namespace detail

namespace {

using detail::ExperimentDef;
using detail::StatKind;

struct Recorder {
  TrialOutcome out;
  const ExperimentDef& def;

  void add(double value, bool ok) {
    const auto kind = def.stats[out.values.size()].kind;
    out.values.push_back(value);
    out.passes.push_back(ok);
    if (kind == StatKind::Invariant && !ok) out.invariants_hold = false;
  }

  TrialOutcome finish() {
    bool pass = true;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      if (def.stats[i].kind != StatKind::Info && !out.passes[i]) pass = false;
    }
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      if (def.stats[i].kind == StatKind::Info) out.passes[i] = pass;
    }
    out.pass = pass;
    return out;
  }
};

double flag(bool b) { return b ? 1.0 : 0.0; }

void crofton_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  const UnitVector x = sample_uniform_sphere(c.n, rng);
  const UnitVector y = sample_uniform_sphere(c.n, rng);
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, c.n, c.m, rng);
  std::size_t hits = 0;
  for (Eigen::Index j = 0; j < ens.directions().rows(); ++j) {
    hits += in_wedge(Eigen::VectorXd(ens.directions().row(j).transpose()), x, y) ? 1 : 0;
  }
  const double m = static_cast<double>(c.m);
  const double d = geodesic_distance(x, y);
  const double err = std::abs(static_cast<double>(hits) / m - d);
  rec.add(err, err <= 3.0 * std::sqrt(d * (1.0 - d) / m));
}

void transversal_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  const UnitVector x = sample_uniform_sphere(c.n, rng);
  const UnitVector y = sample_uniform_sphere(c.n, rng);
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, c.n, c.m, rng);
  const Geodesic geo(x, y);
  std::size_t hits = 0;
  for (Eigen::Index j = 0; j < ens.directions().rows(); ++j) {
    const UnitVector theta(ens.directions().row(j).transpose());
    if (in_wedge(theta, x, y) && transversal_separation(theta, geo)) ++hits;
  }
  const double m = static_cast<double>(c.m);
  const double p = geodesic_distance(x, y) / 4.0;
  const double err = std::abs(static_cast<double>(hits) / m - p);
  rec.add(err, err <= 3.0 * std::sqrt(p * (1.0 - p) / m));
}

void small_cells_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  Rng point_rng = rng.derive("points");
  Rng ens_rng = rng.derive("ensemble");
  const PointSet points = sample_sparse_points({c.n, c.s}, c.net_size, point_rng);
  const auto doubled = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, c.n, 2 * c.m, ens_rng);
  const CellReport base = small_cells_check(points, doubled.prefix(c.m), c.delta);
  const CellReport fine = small_cells_check(points, doubled, c.delta);
  rec.add(base.max_cell_diameter, !base.violating_pair.has_value());
  rec.add(static_cast<double>(base.num_cells), true);
  rec.add(fine.max_cell_diameter, fine.max_cell_diameter <= base.max_cell_diameter);
}

PointSet rip_net(const ResolvedConfig& c, Rng& rng) {
  Rng net_rng = rng.derive("net");
  return sparse_net({c.n, c.s}, c.net_size, kDefaultPerturbations, net_rng);
}

void rip_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  const PointSet net = rip_net(c, rng);
  Rng ens_rng = rng.derive("ensemble");
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, c.n, c.m, ens_rng);
  const RipReport r = one_bit_rip(net, ens, c.delta);
  rec.add(r.sup_discrepancy, r.pass);
}

void sign_product_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  const PointSet net = rip_net(c, rng);
  Rng ens_rng = rng.derive("ensemble");
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::Gaussian, c.n, c.m, ens_rng);
  const RipReport r = sign_product_rip(net, ens, c.delta);
  rec.add(r.sup_discrepancy, r.pass);
}

void linear_rip_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  const PointSet net = rip_net(c, rng);
  Rng ens_rng = rng.derive("ensemble");
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::Gaussian, c.n, c.m, ens_rng);
  const RipReport r = linear_rip(net, ens, c.delta);
  rec.add(r.sup_discrepancy, r.pass);
}

struct Widths {
  PointSet points;
  WidthEstimate gaussian;
  WidthEstimate hemisphere;
};

Widths widths_of(const ResolvedConfig& c, Rng& rng, unsigned inner_threads) {
  Rng point_rng = rng.derive("points");
  Widths w;
  w.points = sample_sparse_points({c.n, c.s}, c.net_size, point_rng);
  Rng g_rng = rng.derive("gaussian");
  Rng h_rng = rng.derive("hemisphere");
  w.gaussian = estimate_gaussian_width(w.points, c.inner_trials, g_rng, Workers{inner_threads});
  w.hemisphere = estimate_hemisphere_width_cholesky(w.points, c.inner_trials, h_rng, Workers{inner_threads});
  return w;
}

void widths_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec, unsigned inner_threads) {
  const Widths w = widths_of(c, rng, inner_threads);
  const double scale = c.s * std::log(static_cast<double>(c.n) / c.s);
  const double ratio = w.gaussian.value * w.gaussian.value / scale;
  rec.add(w.gaussian.value, true);
  rec.add(w.gaussian.std_error, true);
  rec.add(w.hemisphere.value, true);
  rec.add(w.hemisphere.std_error, true);
  rec.add(ratio, ratio >= 0.2 && ratio <= 5.0);
}

void sudakov_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec, unsigned inner_threads) {
  const Widths w = widths_of(c, rng, inner_threads);
  const auto& grid = detail::kSudakovGrid;
  const SudakovReport g = sudakov_check(w.points, ProcessMetric::GaussianMetric, grid, w.gaussian);
  const SudakovReport h = sudakov_check(w.points, ProcessMetric::HemisphereMetric, grid, w.hemisphere);
  const CompareReport chain = comparison_check(w.points, grid, w.gaussian.value, w.hemisphere.value);
  bool sandwich = true;
  Rng pack_rng = rng.derive("packing");
  for (double delta : grid) sandwich = sandwich && capacity_sandwich(w.points, delta, pack_rng).holds();
  rec.add(g.max_ratio, g.max_ratio <= 3.0);
  rec.add(h.max_ratio, h.max_ratio <= 3.0);
  rec.add(flag(chain.holds()), chain.holds());
  rec.add(flag(sandwich), sandwich);
}

void vc_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  Rng search = rng.derive("search");
  const VcReport basis = shatter_check(basis_shatter_set(c.n), search);
  const VcReport radon = shatter_check(radon_witness_set(), search);
  Rng point_rng = rng.derive("points");
  const PointSet random8 = sample_uniform_points(2, 8, point_rng);
  const VcReport rnd = shatter_check(random8, search);
  const double bound = sauer_bound(8, 3);
  Rng circle_rng = rng.derive("circle");
  const PointSet circle = sample_uniform_points(1, c.net_size, circle_rng);
  Rng dp_rng = rng.derive("dp");
  const VcEntropyReport ent = vc_entropy_check(2, {0.25, 0.5}, circle, c.inner_trials, dp_rng, SetClass::Hemispheres);
  double worst = 0.0;
  for (const auto& row : ent.rows) worst = std::max(worst, row.ratio);
  rec.add(flag(basis.shattered), basis.shattered);
  rec.add(flag(radon.shattered), !radon.shattered);
  rec.add(static_cast<double>(rnd.dichotomies_realized), static_cast<double>(rnd.dichotomies_realized) <= bound);
  rec.add(bound, true);
  rec.add(worst, worst <= 1.0);
}

void nets_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  Rng point_rng = rng.derive("points");
  const PointSet points = sample_convex_sparse_points({c.n, c.s}, c.net_size, point_rng);
  Rng pack_rng = rng.derive("packing");
  const CapacityReport cap = capacity_sandwich(points, c.delta, pack_rng);
  const EntropyRatio ent = metric_entropy_ratio(points, c.delta, c.s);
  rec.add(static_cast<double>(cap.packing_at_2delta), true);
  rec.add(static_cast<double>(cap.covering), true);
  rec.add(static_cast<double>(cap.packing_at_delta), true);
  rec.add(flag(cap.holds()), cap.holds());
  rec.add(ent.ratio, true);
}

void metric_ratio_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  Rng point_rng = rng.derive("points");
  const PointSet points = sample_sparse_points({c.n, c.s}, c.net_size, point_rng);
  const double sep = c.delta / 4.0;
  Rng pack_rng = rng.derive("packing");
  const NetReport net = greedy_packing(points, sep, pack_rng);
  Rng ens_rng = rng.derive("ensemble");
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, c.n, c.m, ens_rng);
  const MetricRatioReport r = metric_ratio_check(net.centers, ens, sep);
  Rng cap_rng = rng.derive("capacity");
  const bool sandwich = capacity_sandwich(points, sep, cap_rng).holds();
  rec.add(r.sup_ratio, r.pass);
  rec.add(static_cast<double>(net.packing_size), true);
  rec.add(flag(sandwich), sandwich);
}

void embed_trial(const ResolvedConfig& c, Rng& rng, Recorder& rec) {
  Rng point_rng = rng.derive("points");
  const PointSet points = sample_uniform_points(c.n, c.net_size, point_rng);
  Rng ens_rng = rng.derive("ensemble");
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, c.n, c.m, ens_rng);
  const RipReport r = one_bit_rip(points, ens, c.delta);
  rec.add(r.sup_discrepancy, r.pass);
}

}  // namespace

std::vector<std::string> statistics_of(Experiment e) {
  std::vector<std::string> names;
  for (const auto& s : detail::definition(e).stats) names.emplace_back(s.name);
  return names;
}

ResolvedConfig resolve(const ExperimentConfig& config, Experiment e) {
  if (e == Experiment::All) throw UsageError("resolve needs a concrete experiment");
  const ExperimentDef& def = detail::definition(e);
  ResolvedConfig r;
  r.experiment = e;
  r.n = config.n.value_or(def.n);
  r.s = def.s ? config.s.value_or(*def.s) : 0;
  r.trials = config.trials.value_or(def.trials);
  r.seed = config.seed;
  r.safety = config.safety;
  r.net_size = config.net_size.value_or(def.net_size);
  r.inner_trials = config.inner_trials.value_or(def.inner_trials);
  r.min_pass_rate = config.min_pass_rate.value_or(def.min_pass_rate);
  const std::string name = def.name;

  if (r.n < 1) throw UsageError(name + ": n must be >= 1");
  if (def.s && !(r.s > 0 && r.s < r.n + 1)) throw UsageError(name + ": s must satisfy 0 < s < n+1");
  if (r.trials < 1) throw UsageError(name + ": trials must be >= 1");
  if (!(r.safety > 0.0)) throw UsageError(name + ": safety must be positive");
  if (!(r.min_pass_rate >= 0.0 && r.min_pass_rate <= 1.0)) throw UsageError(name + ": min_pass_rate must lie in [0, 1]");
  if (config.m && *config.m < 1) throw UsageError(name + ": m must be >= 1 or 'auto'");

  if (def.needs_delta) {
    if (config.delta) {
      r.delta = *config.delta;
    } else if (config.experiment == Experiment::All) {
      r.delta = 0.2;
    } else {
      throw UsageError(name + " requires --delta");
    }
    if (!(r.delta > 0.0 && r.delta < 1.0)) throw UsageError(name + ": delta must lie in (0, 1)");
  } else if (config.delta) {
    r.delta = *config.delta;
  }

  if (def.net_size > 0 && r.net_size < 1) throw UsageError(name + ": net_size must be >= 1");
  switch (e) {
    case Experiment::Widths:
    case Experiment::Sudakov:
      if (r.net_size > kMaxCholeskyPoints) {
        throw UsageError(name + ": net_size is limited to " + std::to_string(kMaxCholeskyPoints));
      }
      if (r.inner_trials < kMinWidthTrials) {
        throw UsageError(name + ": inner_trials must be >= " + std::to_string(kMinWidthTrials));
      }
      break;
    case Experiment::Vc:
      if (r.n + 1 > static_cast<int>(kMaxShatterPoints)) {
        throw UsageError(name + ": n + 1 must not exceed " + std::to_string(kMaxShatterPoints));
      }
      if (r.net_size < 2) throw UsageError(name + ": net_size must be >= 2");
      if (r.inner_trials < 1) throw UsageError(name + ": inner_trials must be >= 1");
      break;
    case Experiment::Embed:
      if (r.net_size < 2) throw UsageError(name + ": net_size must be >= 2");
      break;
    default:
      break;
  }

  r.m_auto = !config.m.has_value();
  switch (e) {
    case Experiment::Crofton:
    case Experiment::Transversal:
      r.m = config.m.value_or(detail::kCroftonM);
      break;
    case Experiment::SmallCells:
      r.m = config.m.value_or(auto_m_cells(r.safety, r.delta, r.net_size));
      break;
    case Experiment::Rip:
    case Experiment::SignProduct:
    case Experiment::LinearRip:
    case Experiment::MetricRatio:
      r.m = config.m.value_or(auto_m_rip(r.safety, r.delta, r.s, r.n));
      break;
    case Experiment::Embed:
      r.m = config.m.value_or(embedding_dimension(r.net_size, r.delta, r.safety));
      break;
    default:
      r.m = 0;
      r.m_auto = false;
      break;
  }
  return r;
}

TrialOutcome run_trial(const ResolvedConfig& c, std::size_t trial, unsigned inner_threads) {
  const ExperimentDef& def = detail::definition(c.experiment);
  Rng rng = Rng(c.seed).derive(def.name, trial);
  Recorder rec{{}, def};
  switch (c.experiment) {
    case Experiment::Crofton:
      crofton_trial(c, rng, rec);
      break;
    case Experiment::Transversal:
      transversal_trial(c, rng, rec);
      break;
    case Experiment::SmallCells:
      small_cells_trial(c, rng, rec);
      break;
    case Experiment::Rip:
      rip_trial(c, rng, rec);
      break;
    case Experiment::SignProduct:
      sign_product_trial(c, rng, rec);
      break;
    case Experiment::LinearRip:
      linear_rip_trial(c, rng, rec);
      break;
    case Experiment::Widths:
      widths_trial(c, rng, rec, inner_threads);
      break;
    case Experiment::Sudakov:
      sudakov_trial(c, rng, rec, inner_threads);
      break;
    case Experiment::Vc:
      vc_trial(c, rng, rec);
      break;
    case Experiment::Nets:
      nets_trial(c, rng, rec);
      break;
    case Experiment::MetricRatio:
      metric_ratio_trial(c, rng, rec);
      break;
    case Experiment::Embed:
      embed_trial(c, rng, rec);
      break;
    case Experiment::All:
      throw UsageError("run_trial needs a concrete experiment");
  }
  return rec.finish();
}

}  // namespace onebit
