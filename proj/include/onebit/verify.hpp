#pragma once

// Checks of the tessellation and embedding statements on finite nets:
// small cells, margin separation, one-bit / sign-product / linear RIP,
// the metric-ratio bound and finite embeddings.

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <utility>

#include "onebit/measurement.hpp"
#include "onebit/rng.hpp"
#include "onebit/sphere.hpp"

namespace onebit {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct CellReport {
  double delta = 0.0;
  std::size_t num_cells = 0;
  /// Largest geodesic distance between two points with the same pattern.
  double max_cell_diameter = 0.0;
  /// Present iff max_cell_diameter >= delta; the pair attaining it.
  std::optional<IndexPair> violating_pair;
  /// Cell id of every point, numbered by first appearance.
  std::vector<std::size_t> cell_of;
};

/// Groups points by sign pattern under a uniform-sphere ensemble.
CellReport small_cells_check(const PointSet& points, const MeasurementEnsemble& ens, double delta);

/// Number of j with <x, theta_j> < -t < t < <y, theta_j> in either
/// orientation, t = margin (uniform) or margin * sqrt(n) (gaussian, S^n).
std::size_t margin_separation_count(const UnitVector& x, const UnitVector& y, const MeasurementEnsemble& ens,
                                    double margin);

/// (1/2) sqrt(n+1) <= |g| <= 2 sqrt(n+1) for g in R^{n+1}.
bool is_moderate_gaussian(const Eigen::VectorXd& g);
/// Fraction of an ensemble's directions that are moderate.
double moderate_fraction(const MeasurementEnsemble& ens);

struct RipReport {
  double sup_discrepancy = 0.0;
  IndexPair argmax_pair{0, 0};
  std::size_t m = 0;
  double delta_target = 0.0;
  bool pass = true;
};

/// sup over pairs |d_H(sgn Ax, sgn Ay) - d(x, y)|. Any ensemble kind.
RipReport one_bit_rip(const PointSet& points, const MeasurementEnsemble& ens, double delta_target);
/// sup over ordered pairs, x = y included, of |sign-product statistic|.
/// Gaussian ensembles only.
RipReport sign_product_rip(const PointSet& points, const MeasurementEnsemble& ens, double delta_target);
/// sup over pairs |linear_l1_distance - |x - y|_2|. Gaussian ensembles only.
RipReport linear_rip(const PointSet& points, const MeasurementEnsemble& ens, double delta_target);

struct MetricRatioReport {
  double sup_ratio = 0.0;
  IndexPair argmax_pair{0, 0};
  std::size_t m = 0;
  double min_sep = 0.0;
  bool pass = true;  ///< sup_ratio <= 1
};

/// sup over pairs |D(x,y)^2 - d(x,y)| / d(x,y). Throws PreconditionError when
/// some pair is closer than min_sep.
MetricRatioReport metric_ratio_check(const PointSet& points, const MeasurementEnsemble& ens, double min_sep);

struct EmbeddingResult {
  MeasurementEnsemble ensemble;
  RipReport report;
};

/// ceil(safety delta^-2 ln |K|).
std::size_t embedding_dimension(std::size_t num_points, double delta, double safety);

/// Draws a uniform ensemble of embedding_dimension(...) directions and reports
/// its one-bit RIP on the points. Requires at least two points.
EmbeddingResult finite_embedding(const PointSet& points, double delta, double safety, Rng& rng);

/// ceil(safety delta^-2 s log+(n/s)).
std::size_t auto_m_rip(double safety, double delta, int s, int n);
/// ceil(safety delta^-1 ln(net_size)).
std::size_t auto_m_cells(double safety, double delta, std::size_t net_size);

inline constexpr std::size_t kDefaultPerturbations = 10;

/// `size` samples of K_s, plus one support-preserving perturbation of a point
/// from each of the `perturbations` closest pairs. The perturbed points sit
/// at about half the pair's distance from their base point.
PointSet sparse_net(const SparseSpec& spec, std::size_t size, std::size_t perturbations, Rng& rng);

}  // namespace onebit
