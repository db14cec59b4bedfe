#include "onebit/processes.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

constexpr std::size_t kChunk = 64;

WidthEstimate summarize(const std::vector<double>& values, WidthMethod method) {
  WidthEstimate w;
  w.method = method;
  w.trials = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  w.value = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - w.value) * (v - w.value);
  w.std_error = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return w;
}

void require_points(const PointSet& points, const char* op) {
  if (points.empty()) throw InvalidArgument(std::string(op) + " needs a nonempty point set");
}

void require_trials(std::size_t trials) {
  if (trials < kMinWidthTrials) {
    throw InvalidArgument("width estimates need at least " + std::to_string(kMinWidthTrials) + " trials");
  }
}

/// Column-wise max minus min of a (points x trials) block, written to out.
void column_spread(const Eigen::MatrixXd& block, std::vector<double>& out, std::size_t first) {
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    out[first + static_cast<std::size_t>(c)] = block.col(c).maxCoeff() - block.col(c).minCoeff();
  }
}

/// Fills a (rows x len) block with standard normals, column t from stream base.derive(first + t).
Eigen::MatrixXd normal_block(const Rng& base, Eigen::Index rows, std::size_t first, std::size_t len) {
  Eigen::MatrixXd z(rows, static_cast<Eigen::Index>(len));
  for (std::size_t t = 0; t < len; ++t) {
    Rng r = base.derive(static_cast<std::uint64_t>(first + t));
    for (Eigen::Index i = 0; i < rows; ++i) z(i, static_cast<Eigen::Index>(t)) = r.normal();
  }
  return z;
}

template <class Block>
std::vector<double> chunked_spreads(std::size_t trials, Workers workers, Block&& block) {
  std::vector<double> values(trials);
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t first = c * kChunk;
    const std::size_t len = std::min(kChunk, trials - first);
    column_spread(block(first, len), values, first);
  });
  return values;
}

}  // namespace

double hemisphere_covariance(const UnitVector& x, const UnitVector& y) { return 0.25 - 0.5 * geodesic_distance(x, y); }

CovarianceMatrix::CovarianceMatrix(const PointSet& points) {
  require_points(points, "CovarianceMatrix");
  const Eigen::MatrixXd pts = points.matrix();
  const Eigen::MatrixXd gram = pts * pts.transpose();
  entries_ = gram.unaryExpr([](double c) { return 0.25 - 0.5 * std::acos(std::clamp(c, -1.0, 1.0)) / std::numbers::pi; });
  entries_.diagonal().setConstant(0.25);
}

double CovarianceMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXd CovarianceMatrix::cholesky_factor(double* jitter_used) const {
  const Eigen::Index k = entries_.rows();
  for (double jitter = 1e-10; jitter <= 1e-6 * 1.0000001; jitter *= 10.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(entries_ + jitter * Eigen::MatrixXd::Identity(k, k));
    if (llt.info() == Eigen::Success) {
      if (jitter_used != nullptr) *jitter_used = jitter;
      return llt.matrixL();
    }
  }
  throw NumericalError("hemisphere covariance is not positive definite even with jitter 1e-6");
}

WidthEstimate estimate_gaussian_width(const PointSet& points, std::size_t trials, Rng& rng, Workers workers) {
  require_points(points, "estimate_gaussian_width");
  require_trials(trials);
  const Eigen::MatrixXd pts = points.matrix();
  const Rng base = rng.derive("gaussian_width");
  auto values = chunked_spreads(trials, workers, [&](std::size_t first, std::size_t len) {
    return Eigen::MatrixXd(pts * normal_block(base, pts.cols(), first, len));
  });
  return summarize(values, WidthMethod::GaussianWidth);
}

WidthEstimate estimate_hemisphere_width_cholesky(const PointSet& points, std::size_t trials, Rng& rng,
                                                 Workers workers) {
  require_points(points, "estimate_hemisphere_width_cholesky");
  require_trials(trials);
  if (points.size() > kMaxCholeskyPoints) {
    throw FeasibilityError("Cholesky sampling is limited to " + std::to_string(kMaxCholeskyPoints) + " points");
  }
  const Eigen::MatrixXd lower = CovarianceMatrix(points).cholesky_factor();
  const Rng base = rng.derive("hemisphere_cholesky");
  auto values = chunked_spreads(trials, workers, [&](std::size_t first, std::size_t len) {
    return Eigen::MatrixXd(lower.triangularView<Eigen::Lower>() * normal_block(base, lower.rows(), first, len));
  });
  return summarize(values, WidthMethod::HemisphereCholesky);
}

WidthEstimate estimate_hemisphere_width_empirical(const PointSet& points, std::size_t m_inner, std::size_t trials,
                                                  Rng& rng, Workers workers) {
  require_points(points, "estimate_hemisphere_width_empirical");
  if (trials == 0) throw InvalidArgument("estimate_hemisphere_width_empirical needs trials >= 1");
  if (m_inner < kMinInnerMeasurements) {
    throw InvalidArgument("m_inner must be at least " + std::to_string(kMinInnerMeasurements));
  }
  const Eigen::MatrixXd pts = points.matrix();
  const Rng base = rng.derive("hemisphere_empirical");
  const double half = 0.5 * static_cast<double>(m_inner);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_inner));
  std::vector<double> values(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    // Gaussian directions have the sign pattern of their normalizations.
    Rng r = base.derive(static_cast<std::uint64_t>(t));
    Eigen::MatrixXd theta(pts.cols(), static_cast<Eigen::Index>(m_inner));
    for (Eigen::Index j = 0; j < theta.cols(); ++j) {
      for (Eigen::Index i = 0; i < theta.rows(); ++i) theta(i, j) = r.normal();
    }
    const Eigen::MatrixXd proj = pts * theta;
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < proj.rows(); ++i) {
      std::size_t count = 0;
      for (Eigen::Index j = 0; j < proj.cols(); ++j) count += proj(i, j) >= 0.0 ? 1 : 0;
      const double g = (static_cast<double>(count) - half) * scale;
      hi = std::max(hi, g);
      lo = std::min(lo, g);
    }
    values[t] = hi - lo;
  });
  return summarize(values, WidthMethod::HemisphereEmpirical);
}

HemisphereMoments empirical_hemisphere_moments(const UnitVector& x, const UnitVector& y, std::size_t m_inner,
                                               std::size_t trials, Rng& rng, Workers workers) {
  if (x.dim() != y.dim()) throw DimensionMismatch("points of different dimension");
  if (trials < 2) throw InvalidArgument("empirical_hemisphere_moments needs trials >= 2");
  if (m_inner < kMinInnerMeasurements) {
    throw InvalidArgument("m_inner must be at least " + std::to_string(kMinInnerMeasurements));
  }
  // In the plane of x and y, x sits at angle 0 and y at angle alpha.
  const double alpha = std::acos(std::clamp(x.dot(y), -1.0, 1.0));
  const double two_pi = 2.0 * std::numbers::pi;
  const double quarter = 0.5 * std::numbers::pi;
  auto nonneg = [&](double phi) {
    // cos(phi) >= 0 for phi in [0, 2 pi)
    return phi <= quarter || phi >= two_pi - quarter;
  };
  const Rng base = rng.derive("hemisphere_moments");
  const double half = 0.5 * static_cast<double>(m_inner);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_inner));
  std::vector<double> sx(trials);
  std::vector<double> sy(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    Rng r = base.derive(static_cast<std::uint64_t>(t));
    std::size_t cx = 0;
    std::size_t cy = 0;
    for (std::size_t j = 0; j < m_inner; ++j) {
      const double phi = two_pi * r.uniform();
      double rel = phi - alpha;
      if (rel < 0.0) rel += two_pi;
      cx += nonneg(phi) ? 1 : 0;
      cy += nonneg(rel) ? 1 : 0;
    }
    sx[t] = (static_cast<double>(cx) - half) * scale;
    sy[t] = (static_cast<double>(cy) - half) * scale;
  });

  const double n = static_cast<double>(trials);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    mx += sx[t];
    my += sy[t];
  }
  mx /= n;
  my /= n;
  // Per-trial products whose means are the moments; their spread gives the errors.
  auto mean_and_se = [&](auto&& f) {
    double s = 0.0;
    for (std::size_t t = 0; t < trials; ++t) s += f(t);
    const double mean = s / n;
    double ss = 0.0;
    for (std::size_t t = 0; t < trials; ++t) ss += (f(t) - mean) * (f(t) - mean);
    return std::pair{mean * n / (n - 1.0), std::sqrt(ss / (n - 1.0) / n)};
  };
  HemisphereMoments out;
  out.trials = trials;
  std::tie(out.variance_x, out.variance_x_se) = mean_and_se([&](std::size_t t) { return (sx[t] - mx) * (sx[t] - mx); });
  std::tie(out.variance_y, out.variance_y_se) = mean_and_se([&](std::size_t t) { return (sy[t] - my) * (sy[t] - my); });
  std::tie(out.covariance, out.covariance_se) = mean_and_se([&](std::size_t t) { return (sx[t] - mx) * (sy[t] - my); });
  return out;
}

double symmetrized_process_sup(const PointSet& points, const MeasurementEnsemble& ens, Rng& rng) {
  if (ens.kind() != EnsembleKind::UniformSphere) throw KindError("symmetrized_process_sup requires a uniform-sphere ensemble");
  if (points.size() < 2 || ens.size() == 0) return 0.0;
  const Eigen::MatrixXd proj = ens.project(points);
  const Eigen::MatrixXd signs = proj.unaryExpr([](double v) { return static_cast<double>(sgn(v)); });
  Eigen::VectorXd eps(proj.cols());
  for (Eigen::Index j = 0; j < eps.size(); ++j) eps[j] = rng.rademacher();
  // sum_j eps_j 1_W = (sum eps - sum eps_j s_x s_y) / 2
  const Eigen::MatrixXd cross = (signs * eps.asDiagonal()) * signs.transpose();
  const double total = eps.sum();
  const double norm = 2.0 * std::sqrt(static_cast<double>(ens.size()));
  double best = 0.0;
  for (Eigen::Index i = 0; i < cross.rows(); ++i) {
    for (Eigen::Index k = i + 1; k < cross.cols(); ++k) best = std::max(best, std::abs(total - cross(i, k)) / norm);
  }
  return best;
}

double symmetrized_process_value(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y,
                                 const std::vector<int>& eps) {
  if (eps.size() != ens.size()) throw DimensionMismatch("one Rademacher sign per measurement is required");
  if (ens.size() == 0) return 0.0;
  double sum = 0.0;
  const Eigen::VectorXd px = ens.project(x);
  const Eigen::VectorXd py = ens.project(y);
  for (Eigen::Index j = 0; j < px.size(); ++j) {
    if (sgn(px[j]) != sgn(py[j])) sum += eps[static_cast<std::size_t>(j)];
  }
  return sum / std::sqrt(static_cast<double>(ens.size()));
}

SudakovReport sudakov_check(const PointSet& points, ProcessMetric metric, const std::vector<double>& deltas,
                            const WidthEstimate& width) {
  require_points(points, "sudakov_check");
  if (width.value < 0.0) throw InvalidArgument("width must be nonnegative");
  SudakovReport report;
  report.metric = metric;
  report.width = width.value;
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw InvalidArgument("sudakov deltas must be positive");
    SudakovRow row;
    row.delta = delta;
    row.radius = metric == ProcessMetric::GaussianMetric ? delta : std::sqrt(delta);
    const PointMetric pm = metric == ProcessMetric::GaussianMetric ? PointMetric::Chord : PointMetric::HemisphereProcess;
    row.covering = covering_estimate(points, row.radius, pm);
    row.lhs = row.radius * std::sqrt(std::log(static_cast<double>(row.covering)));
    if (width.value > 0.0) {
      row.ratio = row.lhs / width.value;
    } else {
      row.ratio = row.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.rows.push_back(row);
  }
  return report;
}

bool CompareReport::holds() const {
  return std::all_of(rows.begin(), rows.end(), [](const CompareRow& r) { return r.holds; });
}

CompareReport comparison_check(const PointSet& points, const std::vector<double>& deltas, double gaussian_width,
                               double hemisphere_width, double constant) {
  require_points(points, "comparison_check");
  CompareReport report;
  report.constant = constant;
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("comparison deltas must lie in (0, 1)");
    CompareRow row;
    row.delta = delta;
    row.covering = covering_estimate(points, delta, PointMetric::Geodesic);
    row.lhs = std::sqrt(std::log(static_cast<double>(row.covering)));
    row.gaussian_bound = constant * gaussian_width / delta;
    row.hemisphere_bound = constant * hemisphere_width / std::sqrt(delta);
    row.holds = row.lhs <= std::min(row.gaussian_bound, row.hemisphere_bound);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace onebit
