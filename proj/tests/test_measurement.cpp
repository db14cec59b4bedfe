#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "onebit/errors.hpp"
#include "onebit/measurement.hpp"

using namespace onebit;

namespace {

MeasurementEnsemble uniform(int n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  return MeasurementEnsemble::sample(EnsembleKind::UniformSphere, n, m, rng);
}

MeasurementEnsemble gaussian(int n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  return MeasurementEnsemble::sample(EnsembleKind::Gaussian, n, m, rng);
}

}  // namespace

TEST(Ensemble, ValidationAndShape) {
  Eigen::MatrixXd bad(2, 3);
  bad << 1, 0, 0, 1, 1, 0;
  EXPECT_THROW(MeasurementEnsemble(bad, EnsembleKind::UniformSphere, 0), InvalidArgument);
  EXPECT_NO_THROW(MeasurementEnsemble(bad, EnsembleKind::Gaussian, 0));
  EXPECT_THROW(MeasurementEnsemble(Eigen::MatrixXd(3, 1), EnsembleKind::Gaussian, 0), InvalidArgument);
  const auto ens = uniform(4, 50, 1);
  EXPECT_EQ(ens.size(), 50u);
  EXPECT_EQ(ens.dim(), 5);
  EXPECT_EQ(ens.prefix(10).size(), 10u);
  EXPECT_EQ(ens.prefix(10).directions(), ens.directions().topRows(10));
  EXPECT_THROW(ens.prefix(51), InvalidArgument);
  EXPECT_EQ(uniform(4, 0, 1).size(), 0u);
}

TEST(Ensemble, RecordsSeed) {
  Rng rng(77);
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::Gaussian, 3, 5, rng);
  EXPECT_EQ(ens.seed(), rng.key());
  EXPECT_EQ(gaussian(3, 20, 5).directions(), gaussian(3, 20, 5).directions());
}

TEST(SignPattern, ParseAndValidate) {
  const SignPattern p = SignPattern::parse("+-+");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p[1], -1);
  EXPECT_EQ(p.to_string(), "+-+");
  EXPECT_EQ((-p).to_string(), "-+-");
  EXPECT_THROW(SignPattern::parse("+0-"), InvalidArgument);
  EXPECT_THROW(SignPattern(std::vector<std::int8_t>{1, 0}), InvalidArgument);
}

TEST(OneBitMap, AlignedDirectionsGiveAllPlus) {
  const UnitVector x = UnitVector::normalize(Eigen::Vector3d(1, 2, 2));
  Eigen::MatrixXd dirs(4, 3);
  for (int j = 0; j < 4; ++j) dirs.row(j) = x.coords().transpose();
  const MeasurementEnsemble ens(dirs, EnsembleKind::UniformSphere, 0);
  EXPECT_EQ(one_bit_map(ens, x).to_string(), "++++");
}

TEST(OneBitMap, NegationAndWedges) {
  const auto ens = uniform(5, 400, 2);
  Rng rng(3);
  const UnitVector x = sample_uniform_sphere(5, rng);
  const UnitVector y = sample_uniform_sphere(5, rng);
  const SignPattern px = one_bit_map(ens, x);
  EXPECT_EQ(one_bit_map(ens, -x), -px);
  const SignPattern py = one_bit_map(ens, y);
  for (std::size_t j = 0; j < ens.size(); ++j) {
    const Eigen::VectorXd theta = ens.directions().row(static_cast<Eigen::Index>(j)).transpose();
    EXPECT_EQ(px[j] != py[j], in_wedge(theta, x, y));
  }
  EXPECT_THROW(one_bit_map(ens, UnitVector::basis(3, 0)), DimensionMismatch);
}

TEST(OneBitMap, SignOfZeroIsPlus) {
  Eigen::MatrixXd dirs(1, 2);
  dirs << 0, 1;
  const MeasurementEnsemble ens(dirs, EnsembleKind::UniformSphere, 0);
  EXPECT_EQ(one_bit_map(ens, UnitVector::basis(2, 0)).to_string(), "+");
  EXPECT_EQ(one_bit_map(ens, -UnitVector::basis(2, 0)).to_string(), "+");
}

TEST(OneBitMap, DependsOnlyOnDirection) {
  const auto ens = gaussian(6, 300, 4);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd v = sample_gaussian_vector(6, rng);
    const UnitVector x = UnitVector::normalize(v);
    const double c = 0.001 + 50.0 * rng.uniform();
    const PatternTable raw(Eigen::MatrixXd((ens.directions() * (c * v)).transpose()));
    EXPECT_EQ(raw.pattern(0), one_bit_map(ens, x));
  }
}

TEST(Hamming, Examples) {
  const SignPattern p = SignPattern::parse("++-+");
  EXPECT_EQ(hamming_distance(p, p), 0.0);
  EXPECT_EQ(hamming_distance(p, -p), 1.0);
  EXPECT_EQ(hamming_distance(p, SignPattern::parse("+--+")), 0.25);
  EXPECT_THROW(hamming_distance(p, SignPattern::parse("++")), DimensionMismatch);
  EXPECT_EQ(hamming_distance(SignPattern(), SignPattern()), 0.0);
}

TEST(Hamming, Pseudometric) {
  const auto ens = uniform(3, 64, 6);
  Rng rng(7);
  std::vector<SignPattern> pats;
  for (int i = 0; i < 15; ++i) pats.push_back(one_bit_map(ens, sample_uniform_sphere(3, rng)));
  for (const auto& a : pats) {
    EXPECT_EQ(hamming_distance(a, a), 0.0);
    for (const auto& b : pats) {
      EXPECT_EQ(hamming_distance(a, b), hamming_distance(b, a));
      for (const auto& c : pats) EXPECT_LE(hamming_distance(a, b), hamming_distance(a, c) + hamming_distance(c, b));
    }
  }
}

TEST(Hamming, ExpectationIsGeodesicDistance) {
  Rng rng(8);
  const std::size_t m = 100000;
  int within = 0;
  for (int pair = 0; pair < 20; ++pair) {
    const UnitVector x = sample_uniform_sphere(3, rng);
    const UnitVector y = sample_uniform_sphere(3, rng);
    const auto ens = MeasurementEnsemble::sample(EnsembleKind::UniformSphere, 3, m, rng);
    const double d = geodesic_distance(x, y);
    const double dh = hamming_distance(one_bit_map(ens, x), one_bit_map(ens, y));
    within += std::abs(dh - d) <= 3.0 * std::sqrt(d * (1 - d) / static_cast<double>(m)) ? 1 : 0;
  }
  EXPECT_GE(within, 19);
}

TEST(PatternTable, MatchesOneBitMap) {
  const auto ens = uniform(4, 130, 9);
  Rng rng(10);
  const PointSet pts = sample_uniform_points(4, 12, rng);
  const PatternTable table(ens, pts);
  EXPECT_EQ(table.points(), 12u);
  EXPECT_EQ(table.measurements(), 130u);
  EXPECT_EQ(table.words_per_row(), 3u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(table.pattern(i), one_bit_map(ens, pts[i]));
    for (std::size_t k = 0; k < pts.size(); ++k) {
      EXPECT_EQ(table.hamming(i, k), hamming_distance(one_bit_map(ens, pts[i]), one_bit_map(ens, pts[k])));
    }
  }
}

TEST(LinearL1, Examples) {
  const auto ens = gaussian(3, 100000, 11);
  Rng rng(12);
  const UnitVector x = sample_uniform_sphere(3, rng);
  const UnitVector y = sample_uniform_sphere(3, rng);
  EXPECT_EQ(linear_l1_distance(ens, x, x), 0.0);
  EXPECT_NEAR(linear_l1_distance(ens, x, y), (x.coords() - y.coords()).norm(), 0.01);
  const UnitVector e1 = UnitVector::basis(4, 0);
  EXPECT_NEAR(linear_l1_distance(ens, e1, -e1), 2.0, 0.02);
  EXPECT_THROW(linear_l1_distance(uniform(3, 10, 1), x, y), KindError);
}

TEST(SignProduct, Lambda) {
  EXPECT_EQ(kSignProductLambda, std::sqrt(2.0 / std::numbers::pi));
  const auto ens = gaussian(2, 10, 1);
  const auto r = sign_product_statistic(ens, UnitVector::basis(3, 0), UnitVector::basis(3, 1));
  EXPECT_EQ(r.lambda, kSignProductLambda);
  EXPECT_EQ(r.m, 10u);
}

TEST(SignProduct, OrthogonalAndDiagonal) {
  const std::size_t m = 100000;
  const auto ens = gaussian(5, m, 13);
  const double tol = 3.0 / std::sqrt(static_cast<double>(m));
  const UnitVector x = UnitVector::basis(6, 0);
  const UnitVector y = UnitVector::basis(6, 3);
  EXPECT_NEAR(sign_product_statistic(ens, x, y).statistic, 0.0, tol);
  // x = y: (1/m) sum |<x, g_j>| -> lambda
  const double mean_abs = sign_product_statistic(ens, x, x).statistic + kSignProductLambda;
  EXPECT_NEAR(mean_abs, 0.7978845608, tol);
  EXPECT_THROW(sign_product_statistic(uniform(5, 4, 1), x, y), KindError);
}

TEST(SignProduct, RandomSparsePairs) {
  Rng rng(14);
  const auto ens = MeasurementEnsemble::sample(EnsembleKind::Gaussian, 30, 100000, rng);
  for (int i = 0; i < 10; ++i) {
    const UnitVector x = sample_sparse_unit({30, 4}, rng);
    const UnitVector y = sample_sparse_unit({30, 4}, rng);
    EXPECT_LE(std::abs(sign_product_statistic(ens, x, y).statistic), 0.02);
  }
}

TEST(SignProduct, DiagonalConcentratesAcrossSeeds) {
  const std::size_t m = 10000;
  int ok = 0;
  const int seeds = 40;
  for (int s = 0; s < seeds; ++s) {
    const auto ens = gaussian(4, m, 1000 + s);
    const UnitVector x = UnitVector::basis(5, 2);
    ok += std::abs(sign_product_statistic(ens, x, x).statistic) <= 4.0 / std::sqrt(static_cast<double>(m)) ? 1 : 0;
  }
  EXPECT_GE(ok, static_cast<int>(std::ceil(0.95 * seeds)));
}

TEST(ConditionalMetric, EqualsHammingExactly) {
  const auto ens = uniform(6, 777, 15);
  Rng rng(16);
  for (int i = 0; i < 30; ++i) {
    const UnitVector x = sample_uniform_sphere(6, rng);
    const UnitVector y = sample_uniform_sphere(6, rng);
    EXPECT_EQ(conditional_metric_sq(ens, x, x), 0.0);
    EXPECT_EQ(conditional_metric_sq(ens, x, y), hamming_distance(one_bit_map(ens, x), one_bit_map(ens, y)));
  }
}

TEST(ConditionalMetric, ExpectationIsDistance) {
  const std::size_t m = 100000;
  const auto ens = uniform(2, m, 17);
  Rng rng(18);
  const UnitVector x = sample_uniform_sphere(2, rng);
  const UnitVector y = sample_uniform_sphere(2, rng);
  const double d = geodesic_distance(x, y);
  EXPECT_NEAR(conditional_metric_sq(ens, x, y), d, 3.0 * std::sqrt(d * (1 - d) / static_cast<double>(m)));
}

TEST(Ensemble, NormalizedKeepsPatterns) {
  const auto ens = gaussian(5, 200, 19);
  const auto unit = ens.normalized();
  EXPECT_EQ(unit.kind(), EnsembleKind::UniformSphere);
  Rng rng(20);
  for (int i = 0; i < 10; ++i) {
    const UnitVector x = sample_uniform_sphere(5, rng);
    EXPECT_EQ(one_bit_map(ens, x), one_bit_map(unit, x));
  }
}
