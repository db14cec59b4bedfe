#include "onebit/measurement.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

void require_dim(const MeasurementEnsemble& ens, int dim) {
  if (ens.dim() != dim) {
    throw DimensionMismatch("ensemble dimension " + std::to_string(ens.dim()) + " vs point dimension " +
                            std::to_string(dim));
  }
}

void require_gaussian(const MeasurementEnsemble& ens, const char* op) {
  if (ens.kind() != EnsembleKind::Gaussian) throw KindError(std::string(op) + " requires a gaussian ensemble");
}

double ratio(std::size_t count, std::size_t m) {
  return m == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(m);
}

}  // namespace

MeasurementEnsemble::MeasurementEnsemble(Eigen::MatrixXd directions, EnsembleKind kind, std::uint64_t seed)
    : directions_(std::move(directions)), kind_(kind), seed_(seed) {
  if (directions_.cols() < 2) throw InvalidArgument("ensemble directions need ambient dimension >= 2");
  if (kind_ == EnsembleKind::UniformSphere) {
    for (Eigen::Index j = 0; j < directions_.rows(); ++j) {
      if (std::abs(directions_.row(j).norm() - 1.0) > kUnitNormTolerance) {
        throw InvalidArgument("uniform-sphere ensemble row " + std::to_string(j) + " is not a unit vector");
      }
    }
  }
}

MeasurementEnsemble MeasurementEnsemble::sample(EnsembleKind kind, int n, std::size_t m, Rng& rng) {
  if (n < 1) throw InvalidArgument("sphere dimension n must be >= 1");
  Eigen::MatrixXd dirs(static_cast<Eigen::Index>(m), n + 1);
  for (Eigen::Index j = 0; j < dirs.rows(); ++j) {
    if (kind == EnsembleKind::Gaussian) {
      dirs.row(j) = sample_gaussian_vector(n, rng).transpose();
    } else {
      dirs.row(j) = sample_uniform_sphere(n, rng).coords().transpose();
    }
  }
  return MeasurementEnsemble(std::move(dirs), kind, rng.key());
}

MeasurementEnsemble MeasurementEnsemble::prefix(std::size_t m) const {
  if (m > size()) throw InvalidArgument("prefix longer than the ensemble");
  return MeasurementEnsemble(directions_.topRows(static_cast<Eigen::Index>(m)), kind_, seed_);
}

MeasurementEnsemble MeasurementEnsemble::normalized() const {
  if (kind_ == EnsembleKind::UniformSphere) return *this;
  Eigen::MatrixXd unit = directions_;
  for (Eigen::Index j = 0; j < unit.rows(); ++j) unit.row(j) /= unit.row(j).norm();
  return MeasurementEnsemble(std::move(unit), EnsembleKind::UniformSphere, seed_);
}

Eigen::VectorXd MeasurementEnsemble::project(const UnitVector& x) const {
  require_dim(*this, x.dim());
  return directions_ * x.coords();
}

Eigen::MatrixXd MeasurementEnsemble::project(const PointSet& points) const {
  if (points.empty()) return Eigen::MatrixXd(0, static_cast<Eigen::Index>(size()));
  require_dim(*this, points.dim());
  return points.matrix() * directions_.transpose();
}

SignPattern::SignPattern(std::vector<std::int8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b != 1 && b != -1) throw InvalidArgument("sign pattern entries must be +1 or -1");
  }
}

SignPattern SignPattern::parse(std::string_view text) {
  std::vector<std::int8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '+') {
      bits.push_back(1);
    } else if (c == '-') {
      bits.push_back(-1);
    } else {
      throw InvalidArgument(std::string("unexpected character in sign pattern: '") + c + "'");
    }
  }
  return SignPattern(std::move(bits));
}

SignPattern SignPattern::operator-() const {
  SignPattern out = *this;
  for (auto& b : out.bits_) b = static_cast<std::int8_t>(-b);
  return out;
}

std::string SignPattern::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b > 0 ? '+' : '-');
  return s;
}

PatternTable::PatternTable(const MeasurementEnsemble& ens, const PointSet& points)
    : PatternTable(ens.project(points)) {}

PatternTable::PatternTable(const Eigen::MatrixXd& projections)
    : rows_(static_cast<std::size_t>(projections.rows())),
      m_(static_cast<std::size_t>(projections.cols())),
      stride_((m_ + 63) / 64),
      words_(rows_ * stride_, 0) {
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t* w = words_.data() + i * stride_;
    for (std::size_t j = 0; j < m_; ++j) {
      if (sgn(projections(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) < 0) {
        w[j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
  }
}

std::size_t PatternTable::mismatches(std::size_t i, std::size_t k) const {
  const std::uint64_t* a = row(i);
  const std::uint64_t* b = row(k);
  std::size_t count = 0;
  for (std::size_t w = 0; w < stride_; ++w) count += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  return count;
}

double PatternTable::hamming(std::size_t i, std::size_t k) const { return ratio(mismatches(i, k), m_); }

SignPattern PatternTable::pattern(std::size_t i) const {
  std::vector<std::int8_t> bits(m_);
  const std::uint64_t* w = row(i);
  for (std::size_t j = 0; j < m_; ++j) bits[j] = ((w[j / 64] >> (j % 64)) & 1U) ? -1 : 1;
  return SignPattern(std::move(bits));
}

SignPattern one_bit_map(const MeasurementEnsemble& ens, const UnitVector& x) {
  const Eigen::VectorXd p = ens.project(x);
  std::vector<std::int8_t> bits(static_cast<std::size_t>(p.size()));
  for (Eigen::Index j = 0; j < p.size(); ++j) bits[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(sgn(p[j]));
  return SignPattern(std::move(bits));
}

double hamming_distance(const SignPattern& p, const SignPattern& q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("sign patterns of length " + std::to_string(p.size()) + " and " +
                            std::to_string(q.size()));
  }
  std::size_t diff = 0;
  for (std::size_t j = 0; j < p.size(); ++j) diff += (p[j] != q[j]) ? 1 : 0;
  return ratio(diff, p.size());
}

double linear_l1_distance(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y) {
  require_gaussian(ens, "linear_l1_distance");
  require_dim(ens, x.dim());
  require_dim(ens, y.dim());
  if (ens.size() == 0) throw InvalidArgument("linear_l1_distance needs m >= 1");
  const Eigen::VectorXd diff = x.coords() - y.coords();
  const double total = (ens.directions() * diff).cwiseAbs().sum();
  return total / (static_cast<double>(ens.size()) * kSignProductLambda);
}

SignProductReport sign_product_statistic(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y) {
  require_gaussian(ens, "sign_product_statistic");
  require_dim(ens, x.dim());
  require_dim(ens, y.dim());
  if (ens.size() == 0) throw InvalidArgument("sign_product_statistic needs m >= 1");
  const Eigen::VectorXd px = ens.directions() * x.coords();
  const Eigen::VectorXd py = ens.directions() * y.coords();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < px.size(); ++j) sum += sgn(px[j]) * py[j];
  SignProductReport r{kSignProductLambda, 0.0, x, y, ens.size()};
  r.statistic = sum / static_cast<double>(ens.size()) - kSignProductLambda * x.dot(y);
  return r;
}

double conditional_metric_sq(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y) {
  require_dim(ens, x.dim());
  require_dim(ens, y.dim());
  const Eigen::VectorXd px = ens.project(x);
  const Eigen::VectorXd py = ens.project(y);
  std::size_t in_wedge_count = 0;
  for (Eigen::Index j = 0; j < px.size(); ++j) in_wedge_count += (sgn(px[j]) != sgn(py[j])) ? 1 : 0;
  return ratio(in_wedge_count, ens.size());
}

}  // namespace onebit
