#pragma once

// Measurement ensembles, the one-bit sign map x -> sgn(Ax), and the metrics
// and statistics built on top of it.

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/rng.hpp"
#include "onebit/sphere.hpp"

namespace onebit {

/// sqrt(2/pi) = E|Z| for a standard normal Z.
inline const double kSignProductLambda = std::sqrt(2.0 / std::numbers::pi);

enum class EnsembleKind { UniformSphere, Gaussian };

/// m measurement directions in R^{n+1} (rows of A), immutable once built.
///
/// Gaussian ensembles keep the raw g_j; uniform ensembles keep unit vectors.
/// An empty ensemble (m = 0) is allowed and induces the trivial tessellation.
class MeasurementEnsemble {
 public:
  /// Throws InvalidArgument on a non-unit row of a uniform ensemble or when
  /// the ambient dimension is below 2.
  MeasurementEnsemble(Eigen::MatrixXd directions, EnsembleKind kind, std::uint64_t seed);

  /// Draws m directions from rng; the ensemble records rng.key() as its seed.
  static MeasurementEnsemble sample(EnsembleKind kind, int n, std::size_t m, Rng& rng);

  std::size_t size() const noexcept { return static_cast<std::size_t>(directions_.rows()); }
  int dim() const noexcept { return static_cast<int>(directions_.cols()); }
  EnsembleKind kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }
  /// (m x dim); row j is theta_j (or g_j).
  const Eigen::MatrixXd& directions() const noexcept { return directions_; }

  /// The first m directions, same kind and seed. Used for nested ensembles.
  MeasurementEnsemble prefix(std::size_t m) const;
  /// Gaussian rows scaled to unit norm; a uniform ensemble is returned as is.
  MeasurementEnsemble normalized() const;

  /// <theta_j, x> for every j.
  Eigen::VectorXd project(const UnitVector& x) const;
  /// (points x m) matrix of inner products.
  Eigen::MatrixXd project(const PointSet& points) const;

 private:
  Eigen::MatrixXd directions_;
  EnsembleKind kind_;
  std::uint64_t seed_;
};

/// An element of {-1, +1}^m.
class SignPattern {
 public:
  SignPattern() = default;
  /// Throws InvalidArgument if any entry is not +1 or -1.
  explicit SignPattern(std::vector<std::int8_t> bits);

  /// Parses a string of '+' and '-' characters.
  static SignPattern parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  int operator[](std::size_t j) const { return bits_[j]; }
  const std::vector<std::int8_t>& bits() const noexcept { return bits_; }

  SignPattern operator-() const;
  bool operator==(const SignPattern&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int8_t> bits_;
};

/// Sign patterns of a whole point set, packed 64 bits per word.
/// Bit j of row i is set when sgn(<theta_j, x_i>) = -1.
class PatternTable {
 public:
  PatternTable(const MeasurementEnsemble& ens, const PointSet& points);
  /// Packs an already computed (points x m) projection matrix.
  explicit PatternTable(const Eigen::MatrixXd& projections);

  std::size_t points() const noexcept { return rows_; }
  std::size_t measurements() const noexcept { return m_; }

  /// Number of coordinates where patterns i and k differ.
  std::size_t mismatches(std::size_t i, std::size_t k) const;
  /// mismatches / m; 0 when m = 0.
  double hamming(std::size_t i, std::size_t k) const;
  /// The packed words of row i; equal rows share a cell of the tessellation.
  const std::uint64_t* row(std::size_t i) const { return words_.data() + i * stride_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  SignPattern pattern(std::size_t i) const;

 private:
  std::size_t rows_ = 0;
  std::size_t m_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Bit j is sgn(<theta_j, x>) with sgn(0) = +1.
SignPattern one_bit_map(const MeasurementEnsemble& ens, const UnitVector& x);

/// Fraction of coordinates in which the patterns differ. Equal-length only.
double hamming_distance(const SignPattern& p, const SignPattern& q);

/// (1 / (m sqrt(2/pi))) sum_j |<g_j, x - y>|, unbiased for |x - y|_2.
/// Gaussian ensembles only.
double linear_l1_distance(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y);

struct SignProductReport {
  double lambda = kSignProductLambda;
  /// (1/m) sum_j sgn(<x, g_j>) <y, g_j> - lambda <x, y>
  double statistic = 0.0;
  UnitVector x;
  UnitVector y;
  std::size_t m = 0;
};

/// Gaussian ensembles only.
SignProductReport sign_product_statistic(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y);

/// D(x,y)^2 = (1/m) #{j : theta_j in W_{x,y}}. Bit-identical to
/// hamming_distance(one_bit_map(ens, x), one_bit_map(ens, y)).
double conditional_metric_sq(const MeasurementEnsemble& ens, const UnitVector& x, const UnitVector& y);

}  // namespace onebit
