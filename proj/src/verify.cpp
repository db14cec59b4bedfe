#include "onebit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "onebit/errors.hpp"
#include "onebit/nets.hpp"

namespace onebit {

namespace {

double geodesic_from_dot(double c) { return std::acos(std::clamp(c, -1.0, 1.0)) / std::numbers::pi; }

void require_dims(const PointSet& points, const MeasurementEnsemble& ens) {
  if (!points.empty() && points.dim() != ens.dim()) {
    throw DimensionMismatch("ensemble dimension " + std::to_string(ens.dim()) + " vs point dimension " +
                            std::to_string(points.dim()));
  }
}

void require_gaussian(const MeasurementEnsemble& ens, const char* op) {
  if (ens.kind() != EnsembleKind::Gaussian) throw KindError(std::string(op) + " requires a gaussian ensemble");
}

void require_delta(double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
}

/// Updates report with the pair (i, k) if its discrepancy is a new maximum.
void consider(RipReport& r, double value, std::size_t i, std::size_t k) {
  if (value > r.sup_discrepancy) {
    r.sup_discrepancy = value;
    r.argmax_pair = {i, k};
  }
}

void finish(RipReport& r) { r.pass = r.sup_discrepancy <= r.delta_target; }

}  // namespace

CellReport small_cells_check(const PointSet& points, const MeasurementEnsemble& ens, double delta) {
  if (ens.kind() != EnsembleKind::UniformSphere) throw KindError("small_cells_check requires a uniform-sphere ensemble");
  require_delta(delta);
  require_dims(points, ens);
  CellReport report;
  report.delta = delta;
  if (points.empty()) return report;

  const PatternTable table(ens, points);
  const std::size_t words = table.words_per_row();
  std::map<std::vector<std::uint64_t>, std::size_t> ids;
  std::vector<std::vector<std::size_t>> cells;
  report.cell_of.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::uint64_t> key(table.row(i), table.row(i) + words);
    auto [it, inserted] = ids.try_emplace(std::move(key), cells.size());
    if (inserted) cells.emplace_back();
    cells[it->second].push_back(i);
    report.cell_of[i] = it->second;
  }
  report.num_cells = cells.size();

  IndexPair worst{0, 0};
  for (const auto& cell : cells) {
    for (std::size_t a = 0; a < cell.size(); ++a) {
      for (std::size_t b = a + 1; b < cell.size(); ++b) {
        const double d = geodesic_distance(points[cell[a]], points[cell[b]]);
        if (d > report.max_cell_diameter) {
          report.max_cell_diameter = d;
          worst = {cell[a], cell[b]};
        }
      }
    }
  }
  if (report.max_cell_diameter >= delta) report.violating_pair = worst;
  return report;
}

std::size_t margin_separation_count(const UnitVector& x, const UnitVector& y, const MeasurementEnsemble& ens,
                                    double margin) {
  if (x.dim() != y.dim() || x.dim() != ens.dim()) throw DimensionMismatch("points and ensemble must share a dimension");
  if (!(margin >= 0.0)) throw InvalidArgument("margin must be nonnegative");
  const double t = ens.kind() == EnsembleKind::Gaussian ? margin * std::sqrt(static_cast<double>(x.sphere_dim())) : margin;
  const Eigen::VectorXd px = ens.project(x);
  const Eigen::VectorXd py = ens.project(y);
  std::size_t count = 0;
  for (Eigen::Index j = 0; j < px.size(); ++j) {
    const bool forward = px[j] < -t && py[j] > t;
    const bool backward = py[j] < -t && px[j] > t;
    count += (forward || backward) ? 1 : 0;
  }
  return count;
}

bool is_moderate_gaussian(const Eigen::VectorXd& g) {
  const double root = std::sqrt(static_cast<double>(g.size()));
  const double norm = g.norm();
  return 0.5 * root <= norm && norm <= 2.0 * root;
}

double moderate_fraction(const MeasurementEnsemble& ens) {
  if (ens.size() == 0) return 0.0;
  std::size_t count = 0;
  for (Eigen::Index j = 0; j < ens.directions().rows(); ++j) {
    count += is_moderate_gaussian(ens.directions().row(j).transpose()) ? 1 : 0;
  }
  return static_cast<double>(count) / static_cast<double>(ens.size());
}

RipReport one_bit_rip(const PointSet& points, const MeasurementEnsemble& ens, double delta_target) {
  require_delta(delta_target);
  require_dims(points, ens);
  RipReport r;
  r.m = ens.size();
  r.delta_target = delta_target;
  if (points.size() >= 2) {
    const PatternTable table(ens, points);
    const Eigen::MatrixXd pts = points.matrix();
    const Eigen::MatrixXd gram = pts * pts.transpose();
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t k = i + 1; k < points.size(); ++k) {
        const double d = geodesic_from_dot(gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
        consider(r, std::abs(table.hamming(i, k) - d), i, k);
      }
    }
  }
  finish(r);
  return r;
}

RipReport sign_product_rip(const PointSet& points, const MeasurementEnsemble& ens, double delta_target) {
  require_gaussian(ens, "sign_product_rip");
  require_delta(delta_target);
  require_dims(points, ens);
  if (ens.size() == 0) throw InvalidArgument("sign_product_rip needs m >= 1");
  RipReport r;
  r.m = ens.size();
  r.delta_target = delta_target;
  if (!points.empty()) {
    const Eigen::MatrixXd pts = points.matrix();
    const Eigen::MatrixXd proj = ens.project(points);
    const Eigen::MatrixXd signs = proj.unaryExpr([](double v) { return static_cast<double>(sgn(v)); });
    // stat(x, y) = (1/m) sum_j sgn(<x, g_j>) <y, g_j> - lambda <x, y>
    const Eigen::MatrixXd stat =
        (signs * proj.transpose()) / static_cast<double>(ens.size()) - kSignProductLambda * (pts * pts.transpose());
    for (Eigen::Index i = 0; i < stat.rows(); ++i) {
      for (Eigen::Index k = 0; k < stat.cols(); ++k) {
        consider(r, std::abs(stat(i, k)), static_cast<std::size_t>(i), static_cast<std::size_t>(k));
      }
    }
  }
  finish(r);
  return r;
}

RipReport linear_rip(const PointSet& points, const MeasurementEnsemble& ens, double delta_target) {
  require_gaussian(ens, "linear_rip");
  require_delta(delta_target);
  require_dims(points, ens);
  if (ens.size() == 0) throw InvalidArgument("linear_rip needs m >= 1");
  RipReport r;
  r.m = ens.size();
  r.delta_target = delta_target;
  if (points.size() >= 2) {
    const Eigen::MatrixXd proj = ens.project(points);
    const double norm = static_cast<double>(ens.size()) * kSignProductLambda;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t k = i + 1; k < points.size(); ++k) {
        const auto a = static_cast<Eigen::Index>(i);
        const auto b = static_cast<Eigen::Index>(k);
        const double l1 = (proj.row(a) - proj.row(b)).cwiseAbs().sum() / norm;
        consider(r, std::abs(l1 - chord_distance(points[i], points[k])), i, k);
      }
    }
  }
  finish(r);
  return r;
}

MetricRatioReport metric_ratio_check(const PointSet& points, const MeasurementEnsemble& ens, double min_sep) {
  if (!(min_sep > 0.0)) throw InvalidArgument("min_sep must be positive");
  require_dims(points, ens);
  MetricRatioReport r;
  r.m = ens.size();
  r.min_sep = min_sep;
  if (points.size() < 2) return r;
  const Eigen::MatrixXd pts = points.matrix();
  const Eigen::MatrixXd gram = pts * pts.transpose();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      const double d = geodesic_from_dot(gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      if (d < min_sep) {
        throw PreconditionError("points " + std::to_string(i) + " and " + std::to_string(k) +
                                " are closer than min_sep");
      }
    }
  }
  const PatternTable table(ens, points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      const double d = geodesic_from_dot(gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      const double ratio = std::abs(table.hamming(i, k) - d) / d;
      if (ratio > r.sup_ratio) {
        r.sup_ratio = ratio;
        r.argmax_pair = {i, k};
      }
    }
  }
  r.pass = r.sup_ratio <= 1.0;
  return r;
}

std::size_t embedding_dimension(std::size_t num_points, double delta, double safety) {
  if (num_points < 2) throw InvalidArgument("an embedding needs at least two points");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!(safety > 0.0)) throw InvalidArgument("safety must be positive");
  return static_cast<std::size_t>(std::ceil(safety / (delta * delta) * std::log(static_cast<double>(num_points))));
}

EmbeddingResult finite_embedding(const PointSet& points, double delta, double safety, Rng& rng) {
  const std::size_t m = embedding_dimension(points.size(), delta, safety);
  auto ens = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, points.dim() - 1, m, rng);
  RipReport report = one_bit_rip(points, ens, delta);
  return {std::move(ens), report};
}

std::size_t auto_m_rip(double safety, double delta, int s, int n) {
  SparseSpec{n, s}.validate();
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!(safety > 0.0)) throw InvalidArgument("safety must be positive");
  return static_cast<std::size_t>(
      std::ceil(safety / (delta * delta) * s * log_plus(static_cast<double>(n) / static_cast<double>(s))));
}

std::size_t auto_m_cells(double safety, double delta, std::size_t net_size) {
  if (net_size < 1) throw InvalidArgument("net_size must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!(safety > 0.0)) throw InvalidArgument("safety must be positive");
  return static_cast<std::size_t>(std::ceil(safety / delta * std::log(static_cast<double>(net_size))));
}

PointSet sparse_net(const SparseSpec& spec, std::size_t size, std::size_t perturbations, Rng& rng) {
  spec.validate();
  if (size == 0) throw InvalidArgument("sparse_net needs size >= 1");
  Rng base_rng = rng.derive("net_base");
  PointSet net = sample_sparse_points(spec, size, base_rng);
  if (perturbations == 0 || size < 2 || spec.s < 2) return net;

  const Eigen::MatrixXd pts = net.matrix();
  const Eigen::MatrixXd gram = pts * pts.transpose();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(size * (size - 1) / 2);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t k = i + 1; k < size; ++k) {
      pairs.emplace_back(geodesic_from_dot(gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))), i, k);
    }
  }
  const std::size_t take = std::min(perturbations, pairs.size());
  std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(take), pairs.end());

  Rng noise = rng.derive("net_perturb");
  for (std::size_t p = 0; p < take; ++p) {
    const auto [d, i, k] = pairs[p];
    const UnitVector& x = net[i];
    // A unit direction orthogonal to x on x's support.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(x.dim());
    for (Eigen::Index c = 0; c < x.dim(); ++c) {
      if (x[static_cast<int>(c)] != 0.0) u[c] = noise.normal();
    }
    u -= u.dot(x.coords()) * x.coords();
    const double beta = 0.5 * d * std::numbers::pi;
    Eigen::VectorXd moved = std::cos(beta) * x.coords() + std::sin(beta) * u.normalized();
    net.push_back(UnitVector::normalize(moved));
  }
  return net;
}

}  // namespace onebit
