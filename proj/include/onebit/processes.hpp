#pragma once

// Gaussian and hemisphere mean widths, the hemisphere process covariance,
// the symmetrized wedge process Z, and Sudakov / comparison checks.

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "onebit/measurement.hpp"
#include "onebit/nets.hpp"
#include "onebit/parallel.hpp"
#include "onebit/rng.hpp"
#include "onebit/sphere.hpp"

namespace onebit {

enum class WidthMethod { GaussianWidth, HemisphereCholesky, HemisphereEmpirical };

struct WidthEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  WidthMethod method = WidthMethod::GaussianWidth;
};

inline constexpr std::size_t kMinWidthTrials = 100;
inline constexpr std::size_t kMaxCholeskyPoints = 2000;
inline constexpr std::size_t kMinInnerMeasurements = 10000;

/// cov(G_x, G_y) = 1/4 - d(x,y)/2.
double hemisphere_covariance(const UnitVector& x, const UnitVector& y);

/// Covariance of the hemisphere process over a finite point set.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const PointSet& points);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  /// Smallest eigenvalue before any jitter.
  double min_eigenvalue() const;
  /// Lower Cholesky factor of entries + jitter I, escalating the jitter from
  /// 1e-10 by factors of 10 up to 1e-6. Throws NumericalError past that.
  Eigen::MatrixXd cholesky_factor(double* jitter_used = nullptr) const;

 private:
  Eigen::MatrixXd entries_;
};

/// E sup_{x,y} <x - y, gamma> over the set. trials >= kMinWidthTrials.
WidthEstimate estimate_gaussian_width(const PointSet& points, std::size_t trials, Rng& rng, Workers workers = {});

/// E sup (G_x - G_y) with G sampled through a Cholesky factor.
/// At most kMaxCholeskyPoints points.
WidthEstimate estimate_hemisphere_width_cholesky(const PointSet& points, std::size_t trials, Rng& rng,
                                                 Workers workers = {});

/// E sup (G_x - G_y) with G_x replaced by (1/sqrt(m)) sum_j (1_{H_x}(theta_j) - 1/2)
/// over m_inner uniform directions. m_inner >= kMinInnerMeasurements.
WidthEstimate estimate_hemisphere_width_empirical(const PointSet& points, std::size_t m_inner, std::size_t trials,
                                                  Rng& rng, Workers workers = {});

/// Moments of the normalized hemisphere sums of two points.
struct HemisphereMoments {
  double variance_x = 0.0;
  double variance_y = 0.0;
  double covariance = 0.0;
  double variance_x_se = 0.0;
  double variance_y_se = 0.0;
  double covariance_se = 0.0;
  std::size_t trials = 0;
};

/// Only the signs of <theta, x> and <theta, y> enter, and they depend on theta
/// only through its direction inside span(x, y), which is uniform on the great
/// circle. Each theta is drawn there.
HemisphereMoments empirical_hemisphere_moments(const UnitVector& x, const UnitVector& y, std::size_t m_inner,
                                               std::size_t trials, Rng& rng, Workers workers = {});

/// sup over pairs of |Z_{x,y}|, Z_{x,y} = (1/sqrt(m)) sum_j eps_j 1_{W_{x,y}}(theta_j),
/// with fresh Rademacher eps drawn from rng. Uniform ensembles only.
double symmetrized_process_sup(const PointSet& points, const MeasurementEnsemble& ens, Rng& rng);

/// Z_{x,y} for one pair and a given sign vector eps.
double symmetrized_process_value(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y,
                                 const std::vector<int>& eps);

enum class ProcessMetric {
  GaussianMetric,    ///< |x - y|_2 at radius delta
  HemisphereMetric,  ///< sqrt(d(x,y)) at radius sqrt(delta)
};

struct SudakovRow {
  double delta = 0.0;
  double radius = 0.0;
  std::size_t covering = 0;
  double lhs = 0.0;  ///< radius * sqrt(log N)
  double ratio = 0.0;
};

struct SudakovReport {
  ProcessMetric metric = ProcessMetric::GaussianMetric;
  double width = 0.0;
  std::vector<SudakovRow> rows;
  double max_ratio = 0.0;
};

SudakovReport sudakov_check(const PointSet& points, ProcessMetric metric, const std::vector<double>& deltas,
                            const WidthEstimate& width);

struct CompareRow {
  double delta = 0.0;
  std::size_t covering = 0;  ///< N(K, d, delta)
  double lhs = 0.0;          ///< sqrt(log N)
  double gaussian_bound = 0.0;
  double hemisphere_bound = 0.0;
  bool holds = false;
};

struct CompareReport {
  double constant = 3.0;
  std::vector<CompareRow> rows;
  bool holds() const;
};

/// sqrt(log N(K, d, delta)) <= C min(omega / delta, H / sqrt(delta)).
CompareReport comparison_check(const PointSet& points, const std::vector<double>& deltas, double gaussian_width,
                               double hemisphere_width, double constant = 3.0);

}  // namespace onebit
