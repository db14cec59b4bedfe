#include "onebit/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
  }
}

std::vector<int> random_support(int ambient, int size, Rng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(ambient));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < size; ++i) {
    const auto j = i + static_cast<int>(rng.index(static_cast<std::size_t>(ambient - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(size));
  return idx;
}

// Uniform direction on the coordinate subsphere spanned by `support`.
Eigen::VectorXd direction_on_support(int ambient, const std::vector<int>& support, Rng& rng) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(ambient);
  double norm2 = 0.0;
  while (norm2 == 0.0) {
    for (int j : support) v[j] = rng.normal();
    norm2 = v.squaredNorm();
  }
  return v / std::sqrt(norm2);
}

}  // namespace

UnitVector::UnitVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw InvalidArgument("UnitVector needs at least 2 coordinates (n >= 1)");
  const double norm = coords_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitNormTolerance) {
    throw InvalidArgument("UnitVector coordinates must have unit norm, got " + std::to_string(norm));
  }
}

UnitVector UnitVector::normalize(const Eigen::VectorXd& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
  return UnitVector(v / norm);
}

UnitVector UnitVector::basis(int ambient_dim, int index) {
  if (ambient_dim < 2 || index < 0 || index >= ambient_dim) throw InvalidArgument("basis index out of range");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(ambient_dim);
  e[index] = 1.0;
  return UnitVector(std::move(e), Trusted{});
}

double UnitVector::dot(const UnitVector& other) const {
  require_same_dim(dim(), other.dim(), "dot");
  return coords_.dot(other.coords_);
}

double UnitVector::dot(const Eigen::VectorXd& v) const {
  require_same_dim(dim(), static_cast<int>(v.size()), "dot");
  return coords_.dot(v);
}

UnitVector UnitVector::operator-() const { return UnitVector(-coords_, Trusted{}); }

void SparseSpec::validate() const {
  if (n < 1) throw InvalidArgument("sparse spec needs n >= 1");
  if (s <= 0 || s >= n + 1) {
    throw InvalidArgument("sparse spec needs 0 < s < n+1, got n=" + std::to_string(n) + " s=" + std::to_string(s));
  }
}

PointSet::PointSet(std::vector<UnitVector> points, PointSource source) : points_(std::move(points)), source_(source) {
  for (const auto& p : points_) require_same_dim(points_.front().dim(), p.dim(), "PointSet");
}

void PointSet::push_back(UnitVector p) {
  if (!points_.empty()) require_same_dim(dim(), p.dim(), "PointSet::push_back");
  points_.push_back(std::move(p));
}

PointSet PointSet::subset(const std::vector<std::size_t>& indices, PointSource source) const {
  std::vector<UnitVector> picked;
  picked.reserve(indices.size());
  for (auto i : indices) picked.push_back(points_.at(i));
  return PointSet(std::move(picked), source);
}

Eigen::MatrixXd PointSet::matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(size()), dim());
  for (std::size_t i = 0; i < size(); ++i) m.row(static_cast<Eigen::Index>(i)) = points_[i].coords().transpose();
  return m;
}

double geodesic_distance(const UnitVector& x, const UnitVector& y) {
  require_same_dim(x.dim(), y.dim(), "geodesic_distance");
  // Equal to arccos(<x,y>) but exact at x = y and well conditioned near it.
  const double angle = 2.0 * std::atan2((x.coords() - y.coords()).norm(), (x.coords() + y.coords()).norm());
  return std::clamp(angle / std::numbers::pi, 0.0, 1.0);
}

double chord_distance(const UnitVector& x, const UnitVector& y) {
  require_same_dim(x.dim(), y.dim(), "chord_distance");
  return (x.coords() - y.coords()).norm();
}

Eigen::VectorXd sample_gaussian_vector(int n, Rng& rng) {
  if (n < 1) throw InvalidArgument("sphere dimension n must be >= 1");
  Eigen::VectorXd g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = rng.normal();
  return g;
}

UnitVector sample_uniform_sphere(int n, Rng& rng) {
  for (;;) {
    Eigen::VectorXd g = sample_gaussian_vector(n, rng);
    const double norm = g.norm();
    if (norm > 0.0) return UnitVector(g / norm);
  }
}

UnitVector sample_sparse_unit(const SparseSpec& spec, Rng& rng) {
  spec.validate();
  const auto support = random_support(spec.n + 1, spec.s, rng);
  return UnitVector(direction_on_support(spec.n + 1, support, rng));
}

UnitVector sample_convex_sparse(const SparseSpec& spec, Rng& rng) {
  spec.validate();
  const int ambient = spec.n + 1;
  const int k_max = std::min(spec.s * spec.s, ambient);
  // A unit vector with k <= s^2 nonzeros has |x|_1 <= sqrt(k) <= s, so the
  // membership test below only guards against rounding.
  for (;;) {
    const bool sparse_branch = rng.uniform() < 0.5;
    const int k = sparse_branch ? 1 + static_cast<int>(rng.index(static_cast<std::size_t>(k_max))) : k_max;
    const auto support = random_support(ambient, k, rng);
    Eigen::VectorXd v = direction_on_support(ambient, support, rng);
    if (v.lpNorm<1>() <= static_cast<double>(spec.s)) return UnitVector(std::move(v));
  }
}

PointSet sample_uniform_points(int n, std::size_t count, Rng& rng) {
  std::vector<UnitVector> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(sample_uniform_sphere(n, rng));
  return PointSet(std::move(pts), PointSource::UniformSample);
}

PointSet sample_sparse_points(const SparseSpec& spec, std::size_t count, Rng& rng) {
  std::vector<UnitVector> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(sample_sparse_unit(spec, rng));
  return PointSet(std::move(pts), PointSource::SparseSample);
}

PointSet sample_convex_sparse_points(const SparseSpec& spec, std::size_t count, Rng& rng) {
  std::vector<UnitVector> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(sample_convex_sparse(spec, rng));
  return PointSet(std::move(pts), PointSource::ConvexSparseSample);
}

bool in_wedge(const UnitVector& theta, const UnitVector& x, const UnitVector& y) {
  return in_wedge(theta.coords(), x, y);
}

bool in_wedge(const Eigen::VectorXd& direction, const UnitVector& x, const UnitVector& y) {
  require_same_dim(x.dim(), y.dim(), "in_wedge");
  return sgn(x.dot(direction)) != sgn(y.dot(direction));
}

Geodesic::Geodesic(UnitVector x, UnitVector y) : x_(std::move(x)), y_(std::move(y)) {
  require_same_dim(x_.dim(), y_.dim(), "Geodesic");
  const double c = x_.dot(y_);
  if (std::abs(c) >= 1.0 - 1e-12) throw DegenerateGeodesic("geodesic endpoints are coincident or antipodal");
  alpha_ = std::acos(clamp_unit(c));
  sin_alpha_ = std::sin(alpha_);
}

UnitVector Geodesic::point(double t) const {
  if (t == 0.0) return x_;
  if (t == 1.0) return y_;
  const Eigen::VectorXd p =
      (std::sin((1.0 - t) * alpha_) * x_.coords() + std::sin(t * alpha_) * y_.coords()) / sin_alpha_;
  return UnitVector::normalize(p);
}

Eigen::VectorXd Geodesic::tangent(double t) const {
  return alpha_ * (-std::cos((1.0 - t) * alpha_) * x_.coords() + std::cos(t * alpha_) * y_.coords()) / sin_alpha_;
}

UnitVector geodesic_point(const Geodesic& geo, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("geodesic parameter t must lie in [0, 1]");
  return geo.point(t);
}

HyperplaneCrossing hyperplane_crossing(const UnitVector& theta, const Geodesic& geo) {
  const double a = geo.angle();
  const double tx = theta.dot(geo.start());
  const double ty = theta.dot(geo.end());
  const int sx = sgn(tx);
  if (sx == sgn(ty)) throw NotSeparating("theta does not lie in the wedge W_{x,y}");
  // theta . gamma(t) = (sin((1-t)a) tx + sin(ta) ty) / sin a; sin a > 0 drops out.
  auto f = [&](double t) { return std::sin((1.0 - t) * a) * tx + std::sin(t * a) * ty; };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (sgn(f(mid)) == sx) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  HyperplaneCrossing out;
  out.t = 0.5 * (lo + hi);
  const Eigen::VectorXd tangent = geo.tangent(out.t);
  const double s = std::abs(theta.dot(tangent)) / tangent.norm();
  out.angle = std::asin(std::min(1.0, s));
  return out;
}

bool transversal_separation(const UnitVector& theta, const Geodesic& geo) {
  const HyperplaneCrossing c = hyperplane_crossing(theta, geo);
  if (c.angle < std::numbers::pi / 4.0) return false;
  const UnitVector z = geo.point(c.t);
  const double quarter = 0.25 * geodesic_distance(geo.start(), geo.end());
  return std::min(geodesic_distance(z, geo.start()), geodesic_distance(z, geo.end())) >= quarter;
}

bool transversal_separation(const UnitVector& theta, const UnitVector& x, const UnitVector& y) {
  return transversal_separation(theta, Geodesic(x, y));
}

}  // namespace onebit
