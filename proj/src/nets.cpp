#include "onebit/nets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cover_impl.hpp"
#include "onebit/errors.hpp"

namespace onebit {

namespace {

constexpr Eigen::Index kGramCacheLimit = 4096;

double distance_from_dot(PointMetric metric, double c) {
  c = std::clamp(c, -1.0, 1.0);
  switch (metric) {
    case PointMetric::Geodesic:
      return std::acos(c) / std::numbers::pi;
    case PointMetric::Chord:
      return std::sqrt(std::max(0.0, 2.0 - 2.0 * c));
    case PointMetric::HemisphereProcess:
      return std::sqrt(std::acos(c) / std::numbers::pi);
  }
  return 0.0;
}

// Pairwise distances of a point set, from a cached Gram matrix when small.
class PointDistances {
 public:
  PointDistances(const PointSet& points, PointMetric metric) : rows_(points.matrix()), metric_(metric) {
    if (rows_.rows() <= kGramCacheLimit) {
      gram_ = rows_ * rows_.transpose();
      cached_ = true;
    }
  }

  double operator()(std::size_t i, std::size_t j) const {
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(j);
    const double c = cached_ ? gram_(a, b) : rows_.row(a).dot(rows_.row(b));
    return distance_from_dot(metric_, c);
  }

 private:
  Eigen::MatrixXd rows_;
  Eigen::MatrixXd gram_;
  bool cached_ = false;
  PointMetric metric_;
};

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng.engine());
  return order;
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

NetReport make_net_report(const PointSet& points, double delta, std::vector<std::size_t> kept) {
  NetReport r;
  r.delta = delta;
  r.packing_size = kept.size();
  r.covering_size = kept.size();
  r.centers = points.subset(kept, PointSource::Packing);
  r.center_indices = std::move(kept);
  return r;
}

}  // namespace

double point_distance(PointMetric metric, const UnitVector& x, const UnitVector& y) {
  switch (metric) {
    case PointMetric::Geodesic:
      return geodesic_distance(x, y);
    case PointMetric::Chord:
      return chord_distance(x, y);
    case PointMetric::HemisphereProcess:
      return std::sqrt(geodesic_distance(x, y));
  }
  return 0.0;
}

NetReport greedy_packing(const PointSet& points, double delta, Rng& rng) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("packing delta must lie in (0, 1)");
  return greedy_packing(points, delta, rng, PointMetric::Geodesic);
}

NetReport greedy_packing(const PointSet& points, double delta, Rng& rng, PointMetric metric) {
  if (points.empty()) throw InvalidArgument("greedy_packing needs a nonempty point set");
  if (!(delta > 0.0)) throw InvalidArgument("packing delta must be positive");
  const PointDistances dist(points, metric);
  auto kept = detail::greedy_pack(shuffled_indices(points.size(), rng), delta, dist);
  return make_net_report(points, delta, std::move(kept));
}

std::size_t greedy_cover_size(const PointSet& points, double delta, PointMetric metric) {
  if (!(delta > 0.0)) throw InvalidArgument("cover radius must be positive");
  const PointDistances dist(points, metric);
  return detail::greedy_set_cover(points.size(), delta, dist);
}

std::size_t covering_estimate(const PointSet& points, double delta, PointMetric metric) {
  if (points.empty()) return 0;
  if (!(delta > 0.0)) throw InvalidArgument("cover radius must be positive");
  const PointDistances dist(points, metric);
  return std::min(detail::greedy_set_cover(points.size(), delta, dist),
                  detail::greedy_pack(identity_order(points.size()), delta, dist).size());
}

CapacityReport capacity_sandwich(const PointSet& points, double delta, Rng& rng, PointMetric metric) {
  if (points.empty()) throw InvalidArgument("capacity_sandwich needs a nonempty point set");
  if (!(delta > 0.0)) throw InvalidArgument("capacity delta must be positive");
  const PointDistances dist(points, metric);
  CapacityReport r;
  r.delta = delta;
  r.packing_at_2delta = detail::greedy_pack(shuffled_indices(points.size(), rng), 2.0 * delta, dist).size();
  r.packing_at_delta = detail::greedy_pack(shuffled_indices(points.size(), rng), delta, dist).size();
  r.covering = std::min(detail::greedy_set_cover(points.size(), delta, dist), r.packing_at_delta);
  return r;
}

std::size_t nearest_center_projection(const UnitVector& point, const PointSet& centers) {
  if (centers.empty()) throw InvalidArgument("nearest_center_projection needs at least one center");
  std::size_t best = 0;
  double best_d = geodesic_distance(point, centers[0]);
  for (std::size_t i = 1; i < centers.size(); ++i) {
    const double d = geodesic_distance(point, centers[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double log_plus(double t) { return std::max(1.0, std::log(t)); }

EntropyRatio metric_entropy_ratio(const PointSet& sample, double delta, int s) {
  if (sample.empty()) throw InvalidArgument("metric_entropy_ratio needs a nonempty sample");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("entropy delta must lie in (0, 1)");
  SparseSpec{sample.dim() - 1, s}.validate();
  EntropyRatio r;
  r.delta = delta;
  r.covering = covering_estimate(sample, delta, PointMetric::Geodesic);
  r.scaled_entropy = delta * delta * std::log(static_cast<double>(r.covering));
  r.sparsity_scale = s * log_plus(static_cast<double>(sample.dim() - 1) / s);
  r.ratio = r.scaled_entropy / r.sparsity_scale;
  return r;
}

// --- shattering ------------------------------------------------------------

namespace {

using Mask = std::uint32_t;

constexpr double kVertexCapBudget = 1 << 22;

// Does the cap centered at c (best threshold) contain exactly the points in `inside`?
bool realizes(const Eigen::VectorXd& proj, Mask inside, std::size_t k) {
  double max_out = -INFINITY;
  double min_in = INFINITY;
  for (std::size_t i = 0; i < k; ++i) {
    if ((inside >> i) & 1U) {
      min_in = std::min(min_in, proj[static_cast<Eigen::Index>(i)]);
    } else {
      max_out = std::max(max_out, proj[static_cast<Eigen::Index>(i)]);
    }
  }
  return max_out < min_in;
}

// c orthogonal to every point of `outside` and equal to the projection of the
// sum of the `inside` points onto that orthogonal complement.
Eigen::VectorXd orthogonal_witness(const Eigen::MatrixXd& pts, Mask inside, std::size_t k) {
  const Eigen::Index dim = pts.cols();
  Eigen::VectorXd target = Eigen::VectorXd::Zero(dim);
  std::vector<Eigen::Index> out_rows;
  for (std::size_t i = 0; i < k; ++i) {
    if ((inside >> i) & 1U) {
      target += pts.row(static_cast<Eigen::Index>(i)).transpose();
    } else {
      out_rows.push_back(static_cast<Eigen::Index>(i));
    }
  }
  if (out_rows.empty()) return target;
  Eigen::MatrixXd basis(dim, static_cast<Eigen::Index>(out_rows.size()));
  for (std::size_t c = 0; c < out_rows.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = pts.row(out_rows[c]).transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).leftCols(rank);
  return target - q * (q.transpose() * target);
}


// Marks every cap obtained by tilting a hyperplane through `dim` of the points
// towards each sign pattern on those points. For points in general position
// this reaches every realizable dichotomy.
// C(k, dim) * 2^dim candidate caps.
double vertex_cap_work(std::size_t k, std::size_t dim) {
  if (k < dim) return 0.0;
  double c = 1.0;
  for (std::size_t i = 0; i < dim; ++i) c = c * static_cast<double>(k - i) / static_cast<double>(i + 1);
  return c * std::ldexp(1.0, static_cast<int>(dim));
}

template <typename Mark>
void vertex_caps(const Eigen::MatrixXd& pts, std::size_t k, Mark&& mark) {
  const auto dim = static_cast<std::size_t>(pts.cols());
  if (k < dim) return;
  std::vector<std::size_t> pick(dim);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  Eigen::MatrixXd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim) + 1);
  const Eigen::Index d = pts.cols();
  for (;;) {
    for (std::size_t r = 0; r < dim; ++r) {
      a.row(static_cast<Eigen::Index>(r)) << pts.row(static_cast<Eigen::Index>(pick[r])), 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd plane = svd.matrixV().col(d);
    const Eigen::VectorXd values = pts * plane.head(d) + Eigen::VectorXd::Constant(pts.rows(), plane[d]);
    double margin = INFINITY;
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      if (std::find(pick.begin(), pick.end(), static_cast<std::size_t>(j)) == pick.end() && values[j] != 0.0) {
        margin = std::min(margin, std::abs(values[j]));
      }
    }
    if (!std::isfinite(margin)) margin = 1.0;
    const Eigen::MatrixXd gram_inv = (a * a.transpose()).inverse();
    for (std::uint32_t signs = 0; signs < (1U << dim); ++signs) {
      Eigen::VectorXd target(static_cast<Eigen::Index>(dim));
      for (std::size_t r = 0; r < dim; ++r) target[static_cast<Eigen::Index>(r)] = ((signs >> r) & 1U) ? 1.0 : -1.0;
      const Eigen::VectorXd step = a.transpose() * (gram_inv * target);
      const double eps = 0.5 * margin / (step.head(d).norm() + std::abs(step[d]) + 1e-300);
      const Eigen::VectorXd tilted = plane + eps * step;
      for (double orient : {1.0, -1.0}) {
        const Eigen::VectorXd proj = orient * (pts * tilted.head(d));
        const double t = -orient * tilted[d];
        Mask inside = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (proj[static_cast<Eigen::Index>(j)] > t) inside |= Mask{1} << j;
        }
        if (realizes(proj, inside, k)) mark(inside);
      }
    }
    std::size_t r = dim;
    while (r > 0 && pick[r - 1] == k - dim + r - 1) --r;
    if (r == 0) break;
    ++pick[r - 1];
    for (std::size_t q = r; q < dim; ++q) pick[q] = pick[q - 1] + 1;
  }
}

}  // namespace

PointSet basis_shatter_set(int n) {
  if (n < 1) throw InvalidArgument("basis_shatter_set needs n >= 1");
  std::vector<UnitVector> pts;
  for (int j = 0; j < n; ++j) pts.push_back(UnitVector::basis(n + 1, j));
  Eigen::VectorXd ones = Eigen::VectorXd::Zero(n + 1);
  ones.head(n).setOnes();
  pts.push_back(UnitVector::normalize(ones));
  return PointSet(std::move(pts));
}

PointSet radon_witness_set() {
  const UnitVector e1 = UnitVector::basis(3, 0);
  const UnitVector e2 = UnitVector::basis(3, 1);
  return PointSet({e1, e2, -e1, -e2});
}

VcReport shatter_check(const PointSet& points, Rng& rng, std::size_t budget) {
  if (points.empty()) throw InvalidArgument("shatter_check needs at least one point");
  const std::size_t k = points.size();
  if (k > kMaxShatterPoints) {
    throw FeasibilityError("shatter_check enumerates 2^k dichotomies; k = " + std::to_string(k) + " exceeds " +
                           std::to_string(kMaxShatterPoints));
  }
  const Eigen::MatrixXd pts = points.matrix();
  const Mask full = static_cast<Mask>((std::uint64_t{1} << k) - 1);
  const std::uint64_t total = std::uint64_t{1} << k;
  std::vector<bool> realized(total, false);
  std::uint64_t count = 0;
  auto mark = [&](Mask m) {
    if (!realized[m]) {
      realized[m] = true;
      ++count;
    }
  };
  // Empty and full caps: thresholds above 1 and below -1.
  mark(0);
  mark(full);

  // Constructive family.
  for (std::uint64_t mm = 1; mm < full; ++mm) {
    const auto m = static_cast<Mask>(mm);
    const Mask comp = full & ~m;
    if (std::popcount(m) == 1) {
      const auto i = static_cast<Eigen::Index>(std::countr_zero(m));
      if (realizes(pts * pts.row(i).transpose(), m, k)) mark(m);
    } else if (std::popcount(comp) == 1) {
      const auto i = static_cast<Eigen::Index>(std::countr_zero(comp));
      if (realizes(-(pts * pts.row(i).transpose()), m, k)) mark(m);
    }
    if (realized[m]) continue;
    const Eigen::VectorXd direct = orthogonal_witness(pts, m, k);
    if (realizes(pts * direct, m, k)) {
      mark(m);
      continue;
    }
    const Eigen::VectorXd flipped = -orthogonal_witness(pts, comp, k);
    if (realizes(pts * flipped, m, k)) mark(m);
  }

  if (count < total && vertex_cap_work(k, static_cast<std::size_t>(pts.cols())) <= kVertexCapBudget) {
    vertex_caps(pts, k, mark);
  }

  // Random centers: every threshold split of the sorted projections is a cap.
  std::vector<std::size_t> order(k);
  for (std::size_t b = 0; b < budget && count < total; ++b) {
    const UnitVector c = sample_uniform_sphere(points.dim() - 1, rng);
    const Eigen::VectorXd proj = pts * c.coords();
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t z) {
      return proj[static_cast<Eigen::Index>(a)] < proj[static_cast<Eigen::Index>(z)];
    });
    Mask inside = full;
    for (std::size_t r = 0; r + 1 < k; ++r) {
      inside &= ~(Mask{1} << order[r]);
      if (proj[static_cast<Eigen::Index>(order[r])] < proj[static_cast<Eigen::Index>(order[r + 1])]) mark(inside);
    }
  }

  VcReport report;
  report.n = points.dim() - 1;
  report.witness_points = points;
  report.dichotomies_realized = count;
  report.dichotomies_total = total;
  report.shattered = count == total;
  if (k > 1) report.sauer_bound = sauer_bound(static_cast<std::int64_t>(k), report.n + 1);
  return report;
}

double sauer_bound(std::int64_t num_points, std::int64_t vc_dim) {
  if (num_points <= 1) throw InvalidArgument("sauer_bound needs num_points > 1");
  if (vc_dim < 1) throw InvalidArgument("sauer_bound needs vc_dim >= 1");
  const double d = static_cast<double>(vc_dim);
  return std::pow(static_cast<double>(num_points) * std::numbers::e / d, d);
}

int wedge_class_dimension(int n) { return 3 * (n + 1); }

VcEntropyReport vc_entropy_check(int vc_dim, const std::vector<double>& deltas, const PointSet& sample,
                                 std::size_t trials, Rng& rng, SetClass set_class) {
  if (vc_dim < 1) throw InvalidArgument("vc_entropy_check needs vc_dim >= 1");
  if (sample.empty()) throw InvalidArgument("vc_entropy_check needs a nonempty sample");
  if (trials == 0) throw InvalidArgument("vc_entropy_check needs trials >= 1");
  for (double d : deltas) {
    if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("vc_entropy_check deltas must lie in (0, 1)");
  }

  // Membership of each draw in each hemisphere H_x, packed.
  const std::size_t words = (trials + 63) / 64;
  const Eigen::MatrixXd pts = sample.matrix();
  std::vector<std::uint64_t> hemi(sample.size() * words, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    const UnitVector theta = sample_uniform_sphere(sample.dim() - 1, rng);
    const Eigen::VectorXd proj = pts * theta.coords();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (proj[static_cast<Eigen::Index>(i)] >= 0.0) hemi[i * words + t / 64] |= std::uint64_t{1} << (t % 64);
    }
  }

  std::vector<std::uint64_t> members;
  std::size_t count = 0;
  if (set_class == SetClass::Hemispheres) {
    members = hemi;
    count = sample.size();
  } else {
    for (std::size_t i = 0; i < sample.size(); ++i) {
      for (std::size_t j = i + 1; j < sample.size(); ++j) {
        for (std::size_t w = 0; w < words; ++w) members.push_back(hemi[i * words + w] ^ hemi[j * words + w]);
        ++count;
      }
    }
    if (count == 0) throw InvalidArgument("the wedge class needs at least two sample points");
  }
  auto dp = [&](std::size_t a, std::size_t b) {
    std::size_t diff = 0;
    for (std::size_t w = 0; w < words; ++w) diff += static_cast<std::size_t>(std::popcount(members[a * words + w] ^ members[b * words + w]));
    return static_cast<double>(diff) / static_cast<double>(trials);
  };

  VcEntropyReport report;
  report.set_class = set_class;
  report.vc_dim = vc_dim;
  report.members = count;
  report.trials = trials;

  std::vector<std::size_t> by_delta(deltas.size());
  std::iota(by_delta.begin(), by_delta.end(), std::size_t{0});
  std::sort(by_delta.begin(), by_delta.end(), [&](std::size_t a, std::size_t b) { return deltas[a] < deltas[b]; });
  std::vector<std::size_t> covers(deltas.size());
  std::size_t best_so_far = count;
  for (std::size_t idx : by_delta) {
    best_so_far = std::min(best_so_far, detail::greedy_set_cover(count, deltas[idx], dp));
    covers[idx] = best_so_far;
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    VcEntropyRow row;
    row.delta = deltas[i];
    row.covering_number = covers[i];
    row.bound = std::pow(deltas[i] / 2.0, -4.0 * vc_dim);
    row.ratio = static_cast<double>(row.covering_number) / row.bound;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace onebit
