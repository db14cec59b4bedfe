#pragma once

// Geometry of the unit sphere S^n in R^{n+1}: points, normalized geodesic
// distance, wedges between hemispheres, geodesic arcs, transversal
// separation, and the samplers used by every experiment.

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "onebit/rng.hpp"

namespace onebit {

inline constexpr double kUnitNormTolerance = 1e-9;

/// Total sign convention: sgn(0) = +1.
inline int sgn(double t) noexcept { return t >= 0.0 ? 1 : -1; }

/// A point on S^n, stored as n+1 ambient coordinates with unit l2 norm.
class UnitVector {
 public:
  /// Throws InvalidArgument unless coords has length >= 2 and unit norm
  /// within kUnitNormTolerance.
  explicit UnitVector(Eigen::VectorXd coords);

  /// Scales v onto the sphere. Throws InvalidArgument for a zero vector.
  static UnitVector normalize(const Eigen::VectorXd& v);
  /// The standard basis vector e_{index+1} in R^{ambient_dim}.
  static UnitVector basis(int ambient_dim, int index);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  int sphere_dim() const noexcept { return dim() - 1; }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  double operator[](int i) const { return coords_[i]; }
  double dot(const UnitVector& other) const;
  double dot(const Eigen::VectorXd& v) const;

  UnitVector operator-() const;
  bool operator==(const UnitVector& other) const { return coords_ == other.coords_; }

 private:
  struct Trusted {};
  UnitVector(Eigen::VectorXd coords, Trusted) : coords_(std::move(coords)) {}

  Eigen::VectorXd coords_;
};

/// Parameters of the s-sparse unit vectors K_s in S^n (0 < s < n+1).
struct SparseSpec {
  int n = 0;
  int s = 0;

  void validate() const;
};

/// Where a point set came from. Carried along for reports.
enum class PointSource { Explicit, UniformSample, SparseSample, ConvexSparseSample, Packing };

/// A finite list of points on one sphere.
class PointSet {
 public:
  PointSet() = default;
  /// Throws DimensionMismatch when the points do not share one dimension.
  explicit PointSet(std::vector<UnitVector> points, PointSource source = PointSource::Explicit);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  /// Ambient dimension; 0 for an empty set.
  int dim() const noexcept { return points_.empty() ? 0 : points_.front().dim(); }
  PointSource source() const noexcept { return source_; }

  const UnitVector& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<UnitVector>& points() const noexcept { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Appends a point; throws DimensionMismatch on a dimension change.
  void push_back(UnitVector p);
  PointSet subset(const std::vector<std::size_t>& indices, PointSource source) const;

  /// The points as rows of a (size x dim) matrix.
  Eigen::MatrixXd matrix() const;

 private:
  std::vector<UnitVector> points_;
  PointSource source_ = PointSource::Explicit;
};

/// d(x, y) = arccos(<x, y>) / pi, in [0, 1].
double geodesic_distance(const UnitVector& x, const UnitVector& y);
/// Euclidean chord length |x - y|, the metric of the process <x, gamma>.
double chord_distance(const UnitVector& x, const UnitVector& y);

UnitVector sample_uniform_sphere(int n, Rng& rng);
Eigen::VectorXd sample_gaussian_vector(int n, Rng& rng);
/// Exactly spec.s nonzero coordinates on a uniformly random support, with a
/// uniformly random direction inside that coordinate subspace.
UnitVector sample_sparse_unit(const SparseSpec& spec, Rng& rng);
/// A member of K_{n,s} = {|x|_2 = 1, |x|_1 <= s}.
UnitVector sample_convex_sparse(const SparseSpec& spec, Rng& rng);

PointSet sample_uniform_points(int n, std::size_t count, Rng& rng);
PointSet sample_sparse_points(const SparseSpec& spec, std::size_t count, Rng& rng);
PointSet sample_convex_sparse_points(const SparseSpec& spec, std::size_t count, Rng& rng);

/// True when theta lies in the wedge W_{x,y} = H_x sym-diff H_y, i.e. the
/// hyperplane theta^perp separates x from y.
bool in_wedge(const UnitVector& theta, const UnitVector& x, const UnitVector& y);
/// Same test for an unnormalized direction; only its sign pattern matters.
bool in_wedge(const Eigen::VectorXd& direction, const UnitVector& x, const UnitVector& y);

/// The minor great-circle arc between two non-antipodal, distinct points.
class Geodesic {
 public:
  /// Throws DegenerateGeodesic for coincident or antipodal endpoints and
  /// DimensionMismatch for endpoints of different dimension.
  Geodesic(UnitVector x, UnitVector y);

  const UnitVector& start() const noexcept { return x_; }
  const UnitVector& end() const noexcept { return y_; }
  /// Central angle in (0, pi).
  double angle() const noexcept { return alpha_; }

  /// gamma(t) = (sin((1-t)a) x + sin(ta) y) / sin a.
  UnitVector point(double t) const;
  /// gamma'(t); its norm is the angle a for every t.
  Eigen::VectorXd tangent(double t) const;

 private:
  UnitVector x_;
  UnitVector y_;
  double alpha_;
  double sin_alpha_;
};

UnitVector geodesic_point(const Geodesic& geo, double t);

/// Where and how a hyperplane theta^perp crosses a geodesic.
struct HyperplaneCrossing {
  double t = 0.0;      ///< arc parameter of the crossing, in [0, 1]
  double angle = 0.0;  ///< angle between the arc and the hyperplane, in [0, pi/2]
};

/// Locates theta . gamma(t) = 0 by bisection to 1e-12 in t.
/// Throws NotSeparating when theta is not in W_{x,y}.
HyperplaneCrossing hyperplane_crossing(const UnitVector& theta, const Geodesic& geo);

/// theta^perp transversely separates x and y: it crosses the arc at an angle
/// of at least pi/4, at a point at least d(x,y)/4 from both endpoints.
bool transversal_separation(const UnitVector& theta, const UnitVector& x, const UnitVector& y);
bool transversal_separation(const UnitVector& theta, const Geodesic& geo);

}  // namespace onebit
