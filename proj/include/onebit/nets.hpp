#pragma once

// Packings, coverings and metric entropy of finite point sets; nearest-center
// projection; shattering by spherical caps and the VC-entropy check.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "onebit/rng.hpp"
#include "onebit/sphere.hpp"

namespace onebit {

/// Metrics a covering can be taken in.
enum class PointMetric {
  Geodesic,           ///< d(x,y) = arccos(<x,y>)/pi
  Chord,              ///< |x - y|_2, the metric of <x, gamma>
  HemisphereProcess,  ///< sqrt(d(x,y)), the metric of the hemisphere process
};

double point_distance(PointMetric metric, const UnitVector& x, const UnitVector& y);

struct NetReport {
  double delta = 0.0;
  /// Size of the greedy delta-separated set: a lower estimate of M(K, delta).
  std::size_t packing_size = 0;
  /// A maximal packing is a delta-covering, so this upper-estimates N(K, delta).
  std::size_t covering_size = 0;
  PointSet centers;
  /// Index of each center in the input set.
  std::vector<std::size_t> center_indices;
};

/// Maximal delta-separated subset (pairwise distance > delta) built by greedy
/// insertion in an rng-shuffled order. Every input point ends up within delta
/// of some center. delta must lie in (0, 1); points must be nonempty.
NetReport greedy_packing(const PointSet& points, double delta, Rng& rng);
/// Same construction in another metric; delta must be positive.
NetReport greedy_packing(const PointSet& points, double delta, Rng& rng, PointMetric metric);

/// Size of a greedy set cover by closed delta-balls centered at input points.
std::size_t greedy_cover_size(const PointSet& points, double delta, PointMetric metric = PointMetric::Geodesic);

/// Smallest delta-cover found: min(greedy set cover, greedy packing at delta
/// in input order).
std::size_t covering_estimate(const PointSet& points, double delta, PointMetric metric = PointMetric::Geodesic);

/// M(K, 2 delta) <= N(K, delta) <= M(K, delta) estimated on one finite set.
struct CapacityReport {
  double delta = 0.0;
  std::size_t packing_at_2delta = 0;
  /// Smallest delta-cover found: min(greedy set cover, packing at delta).
  std::size_t covering = 0;
  std::size_t packing_at_delta = 0;

  bool holds() const noexcept { return packing_at_2delta <= covering && covering <= packing_at_delta; }
};

CapacityReport capacity_sandwich(const PointSet& points, double delta, Rng& rng,
                                 PointMetric metric = PointMetric::Geodesic);

/// Index of the geodesically nearest center; ties go to the lowest index.
std::size_t nearest_center_projection(const UnitVector& point, const PointSet& centers);

/// delta^2 log N(K, delta) against s log+(n/s), measured on a finite sample
/// of K_{n,s}.
struct EntropyRatio {
  double delta = 0.0;
  std::size_t covering = 0;
  double scaled_entropy = 0.0;  ///< delta^2 log N
  double sparsity_scale = 0.0;  ///< s log+(n/s)
  double ratio = 0.0;
};

EntropyRatio metric_entropy_ratio(const PointSet& sample, double delta, int s);

/// log+(t) = max(1, ln t).
double log_plus(double t);

struct VcReport {
  int n = 0;  ///< sphere dimension of the witness points
  PointSet witness_points;
  bool shattered = false;
  std::uint64_t dichotomies_realized = 0;
  std::uint64_t dichotomies_total = 0;
  /// (k e / (n+1))^(n+1); absent for fewer than two points.
  std::optional<double> sauer_bound;
};

inline constexpr std::size_t kMaxShatterPoints = 22;
inline constexpr std::size_t kDefaultCapBudget = 100000;

/// Searches, for every dichotomy (A', A'') of the points, for a cap
/// {a : <c, a> > t} containing exactly A''. Tries the constructive family
/// (c orthogonal to A' and positive on A'', its complement, and small caps
/// around singletons), caps obtained by tilting the hyperplane through every
/// n+1 of the points (skipped when that exceeds about 4M candidates), and
/// `budget` uniformly random centers. A dichotomy not
/// found is reported as not realized within budget. Throws FeasibilityError
/// above kMaxShatterPoints points.
VcReport shatter_check(const PointSet& points, Rng& rng, std::size_t budget = kDefaultCapBudget);

/// {e_1, ..., e_n, (1,...,1)/sqrt(n)} embedded in R^{n+1} (last coordinate 0).
PointSet basis_shatter_set(int n);
/// e_1, e_2, -e_1, -e_2 on S^2: the chords {e_1,-e_1} and {e_2,-e_2} cross, so
/// no cap separates them.
PointSet radon_witness_set();

/// (num_points * e / vc_dim)^vc_dim. Requires num_points > 1 and vc_dim >= 1.
double sauer_bound(std::int64_t num_points, std::int64_t vc_dim);

enum class SetClass { Hemispheres, Wedges };

struct VcEntropyRow {
  double delta = 0.0;
  std::size_t covering_number = 0;
  double bound = 0.0;  ///< (delta/2)^(-4d)
  double ratio = 0.0;  ///< covering_number / bound
};

struct VcEntropyReport {
  SetClass set_class = SetClass::Wedges;
  int vc_dim = 0;
  std::size_t members = 0;
  std::size_t trials = 0;
  std::vector<VcEntropyRow> rows;
};

inline constexpr std::size_t kDefaultDpTrials = 10000;

/// Covering numbers of the hemisphere or wedge class generated by `sample` in
/// the metric d_P(C1, C2) = P(C1 sym-diff C2), with P estimated from `trials`
/// uniform draws. Covering numbers are reported non-increasing in delta (a
/// cover at a smaller radius is a cover at a larger one).
VcEntropyReport vc_entropy_check(int vc_dim, const std::vector<double>& deltas, const PointSet& sample,
                                 std::size_t trials, Rng& rng, SetClass set_class = SetClass::Wedges);

/// 3(n+1): the dimension parameter used for wedges in S^n.
int wedge_class_dimension(int n);

}  // namespace onebit
