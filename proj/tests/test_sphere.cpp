#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "onebit/errors.hpp"
#include "onebit/sphere.hpp"

using namespace onebit;

namespace {

UnitVector e(int dim, int i) { return UnitVector::basis(dim, i); }

UnitVector vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double c : v) x[i++] = c;
  return UnitVector::normalize(x);
}

// 0.999 quantile of chi-square via Wilson-Hilferty.
double chi2_999(double df) {
  const double z = 3.090232;
  const double a = 2.0 / (9.0 * df);
  return df * std::pow(1.0 - a + z * std::sqrt(a), 3);
}

}  // namespace

TEST(UnitVector, Validation) {
  EXPECT_THROW(UnitVector(Eigen::VectorXd::Ones(1)), InvalidArgument);
  EXPECT_THROW(UnitVector(Eigen::VectorXd::Ones(3)), InvalidArgument);
  EXPECT_THROW(UnitVector::normalize(Eigen::VectorXd::Zero(3)), InvalidArgument);
  Eigen::VectorXd nearly = Eigen::VectorXd::Zero(3);
  nearly[0] = 1.0 + 1e-11;
  EXPECT_NO_THROW(UnitVector{nearly});
}

TEST(GeodesicDistance, Examples) {
  const UnitVector x = vec({0.3, -0.2, 0.9});
  EXPECT_DOUBLE_EQ(geodesic_distance(x, x), 0.0);
  EXPECT_DOUBLE_EQ(geodesic_distance(e(3, 0), e(3, 1)), 0.5);
  EXPECT_DOUBLE_EQ(geodesic_distance(x, -x), 1.0);
  EXPECT_THROW(geodesic_distance(e(3, 0), e(4, 0)), DimensionMismatch);
}

TEST(GeodesicDistance, MetricOnSamples) {
  Rng rng(3);
  const PointSet pts = sample_uniform_points(4, 40, rng);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(geodesic_distance(pts[i], pts[i]), 0.0);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double dij = geodesic_distance(pts[i], pts[j]);
      EXPECT_EQ(dij, geodesic_distance(pts[j], pts[i]));
      if (i != j) EXPECT_GT(dij, 0.0);
      for (std::size_t k = 0; k < pts.size(); k += 7) {
        EXPECT_LE(dij, geodesic_distance(pts[i], pts[k]) + geodesic_distance(pts[k], pts[j]) + 1e-9);
      }
    }
  }
}

TEST(SampleUniformSphere, NormAndMoments) {
  Rng rng(11);
  const int n = 4;
  const int draws = 100000;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n + 1);
  const UnitVector v = vec({1, 2, 0, -1, 0.5});
  double second = 0.0;
  for (int i = 0; i < draws; ++i) {
    const UnitVector x = sample_uniform_sphere(n, rng);
    EXPECT_NEAR(x.coords().norm(), 1.0, 1e-9);
    mean += x.coords();
    second += x.dot(v) * x.dot(v);
  }
  mean /= draws;
  for (int c = 0; c <= n; ++c) EXPECT_NEAR(mean[c], 0.0, 4.0 / std::sqrt(draws));
  EXPECT_NEAR(second / draws, 1.0 / (n + 1), 0.05 / (n + 1));
  EXPECT_THROW(sample_uniform_sphere(0, rng), InvalidArgument);
}

TEST(SampleGaussianVector, Moments) {
  Rng rng(12);
  const int draws = 100000;
  const UnitVector v = vec({1, -1, 2});
  double s = 0, ss = 0, abs_proj = 0;
  for (int i = 0; i < draws; ++i) {
    const Eigen::VectorXd g = sample_gaussian_vector(2, rng);
    ASSERT_EQ(g.size(), 3);
    s += g[0];
    ss += g[0] * g[0];
    abs_proj += std::abs(v.dot(g));
  }
  const double mean = s / draws;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(ss / draws - mean * mean, 1.0, 0.02);
  EXPECT_NEAR(abs_proj / draws, std::sqrt(2.0 / std::numbers::pi), 0.01);
  EXPECT_THROW(sample_gaussian_vector(0, rng), InvalidArgument);
}

TEST(SampleSparseUnit, SupportSizeAndValidation) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const UnitVector x = sample_sparse_unit({9, 3}, rng);
    EXPECT_EQ(x.dim(), 10);
    EXPECT_EQ((x.coords().array() != 0.0).count(), 3);
    EXPECT_NEAR(x.coords().norm(), 1.0, 1e-9);
  }
  EXPECT_THROW(sample_sparse_unit({9, 10}, rng), InvalidArgument);
  EXPECT_THROW(sample_sparse_unit({9, 0}, rng), InvalidArgument);
}

TEST(SampleSparseUnit, SupportsAreUniform) {
  Rng rng(6);
  const int draws = 10000;
  std::map<int, int> counts;
  for (int i = 0; i < draws; ++i) {
    const UnitVector x = sample_sparse_unit({9, 3}, rng);
    int mask = 0;
    for (int c = 0; c < 10; ++c) {
      if (x[c] != 0.0) mask |= 1 << c;
    }
    ++counts[mask];
  }
  const int supports = 120;  // C(10, 3)
  EXPECT_EQ(static_cast<int>(counts.size()), supports);
  const double expected = static_cast<double>(draws) / supports;
  double chi2 = 0.0;
  for (const auto& [mask, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, chi2_999(supports - 1));
}

TEST(SampleConvexSparse, Membership) {
  Rng rng(8);
  for (int s : {1, 2, 3}) {
    for (int i = 0; i < 300; ++i) {
      const UnitVector x = sample_convex_sparse({16, s}, rng);
      EXPECT_NEAR(x.coords().norm(), 1.0, 1e-9);
      EXPECT_LE(x.coords().lpNorm<1>(), s + 1e-9);
      if (s == 1) {
        EXPECT_EQ((x.coords().array() != 0.0).count(), 1);
        EXPECT_NEAR(x.coords().cwiseAbs().maxCoeff(), 1.0, 1e-12);
      }
    }
  }
}

TEST(SampleConvexSparse, EqualMagnitudeVectorHasL1EqualS) {
  const int s = 3;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(17);
  for (int i = 0; i < s * s; ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
  const UnitVector x = UnitVector::normalize(v);
  EXPECT_NEAR(x.coords().lpNorm<1>(), s, 1e-12);
}

TEST(SampleConvexSparse, ProducesVariedMembers) {
  Rng rng(10);
  const PointSet pts = sample_convex_sparse_points({16, 3}, 200, rng);
  int dense = 0;
  for (const auto& p : pts) dense += (p.coords().array() != 0.0).count() > 3 ? 1 : 0;
  EXPECT_GT(dense, 0);
  EXPECT_LT(dense, 200);
}

TEST(InWedge, Examples) {
  const UnitVector x = vec({0.2, 0.5, -0.3, 0.7});
  EXPECT_FALSE(in_wedge(x, x, x));
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const UnitVector theta = sample_uniform_sphere(3, rng);
    EXPECT_TRUE(in_wedge(theta, e(4, 0), -e(4, 0)));
  }
  EXPECT_THROW(in_wedge(e(3, 0), e(4, 0), e(4, 1)), DimensionMismatch);
}

TEST(InWedge, CroftonFrequency) {
  Rng rng(21);
  const UnitVector x = sample_uniform_sphere(3, rng);
  const UnitVector y = sample_uniform_sphere(3, rng);
  const int m = 100000;
  int hits = 0;
  for (int i = 0; i < m; ++i) hits += in_wedge(sample_uniform_sphere(3, rng), x, y) ? 1 : 0;
  const double d = geodesic_distance(x, y);
  EXPECT_NEAR(static_cast<double>(hits) / m, d, 3.0 * std::sqrt(d * (1 - d) / m));
}

TEST(GeodesicPoint, Endpoints) {
  const UnitVector x = vec({1, 2, 3});
  const UnitVector y = vec({-1, 0, 2});
  const Geodesic geo(x, y);
  EXPECT_NEAR((geodesic_point(geo, 0.0).coords() - x.coords()).norm(), 0.0, 1e-12);
  EXPECT_NEAR((geodesic_point(geo, 1.0).coords() - y.coords()).norm(), 0.0, 1e-12);
  const Geodesic quarter(e(3, 0), e(3, 1));
  const UnitVector mid = geodesic_point(quarter, 0.5);
  EXPECT_NEAR(mid[0], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(mid[1], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_THROW(geodesic_point(geo, 1.5), InvalidArgument);
}

TEST(GeodesicPoint, ArcLengthAndNorm) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const UnitVector x = sample_uniform_sphere(5, rng);
    const UnitVector y = sample_uniform_sphere(5, rng);
    const Geodesic geo(x, y);
    const double d = geodesic_distance(x, y);
    for (int k = 0; k <= 100; ++k) {
      const double t = k / 100.0;
      const UnitVector p = geodesic_point(geo, t);
      EXPECT_NEAR(p.coords().norm(), 1.0, 1e-9);
      EXPECT_NEAR(geodesic_distance(x, p), t * d, 1e-9);
    }
  }
}

TEST(Geodesic, DegenerateEndpoints) {
  const UnitVector x = vec({1, 1, 0});
  EXPECT_THROW(Geodesic(x, x), DegenerateGeodesic);
  EXPECT_THROW(Geodesic(x, -x), DegenerateGeodesic);
  EXPECT_THROW(Geodesic(e(3, 0), e(4, 1)), DimensionMismatch);
}

TEST(TransversalSeparation, Examples) {
  const UnitVector x = e(3, 0);
  const UnitVector y = e(3, 1);
  EXPECT_TRUE(transversal_separation(vec({-1, 1, 0}), x, y));
  // Hyperplane through gamma(0.1): d(x, crossing) = 0.05 < d(x,y)/4.
  const double a = 0.05 * std::numbers::pi;
  const UnitVector early = vec({-std::sin(a), std::cos(a), 0});
  const HyperplaneCrossing c = hyperplane_crossing(early, Geodesic(x, y));
  EXPECT_NEAR(c.t, 0.1, 1e-10);
  EXPECT_NEAR(c.angle, std::numbers::pi / 2, 1e-9);
  EXPECT_FALSE(transversal_separation(early, x, y));
  EXPECT_THROW(transversal_separation(vec({1, 1, 0}), x, y), NotSeparating);
  EXPECT_THROW(transversal_separation(vec({1, 1, 0}), x, x), DegenerateGeodesic);
}

TEST(TransversalSeparation, ShallowCrossingFails) {
  // Crossing at the midpoint of e1 -> e2 but tilted far out of the plane.
  const UnitVector x = e(3, 0);
  const UnitVector y = e(3, 1);
  const UnitVector steep = vec({-1, 1, 0});
  Eigen::VectorXd tilted = steep.coords() * 0.3;
  tilted[2] = 1.0;
  const UnitVector theta = UnitVector::normalize(tilted);
  const HyperplaneCrossing c = hyperplane_crossing(theta, Geodesic(x, y));
  EXPECT_NEAR(c.t, 0.5, 1e-10);
  EXPECT_LT(c.angle, std::numbers::pi / 4);
  EXPECT_FALSE(transversal_separation(theta, x, y));
}

TEST(TransversalSeparation, ImpliesWedge) {
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const UnitVector x = sample_uniform_sphere(3, rng);
    const UnitVector y = sample_uniform_sphere(3, rng);
    const UnitVector theta = sample_uniform_sphere(3, rng);
    bool transversal = false;
    try {
      transversal = transversal_separation(theta, x, y);
    } catch (const NotSeparating&) {
      EXPECT_FALSE(in_wedge(theta, x, y));
      continue;
    }
    EXPECT_TRUE(in_wedge(theta, x, y));
    (void)transversal;
  }
}

TEST(TransversalSeparation, QuarterOfDistanceInS3) {
  Rng rng(17);
  const UnitVector x = sample_uniform_sphere(3, rng);
  const UnitVector y = sample_uniform_sphere(3, rng);
  const Geodesic geo(x, y);
  const int m = 100000;
  int hits = 0;
  for (int i = 0; i < m; ++i) {
    const UnitVector theta = sample_uniform_sphere(3, rng);
    if (in_wedge(theta, x, y) && transversal_separation(theta, geo)) ++hits;
  }
  const double p = geodesic_distance(x, y) / 4;
  EXPECT_NEAR(static_cast<double>(hits) / m, p, 3.0 * std::sqrt(p * (1 - p) / m));
}

TEST(Samplers, StayInTheirSets) {
  Rng rng(19);
  for (const auto& p : sample_sparse_points({20, 4}, 100, rng)) {
    EXPECT_LE((p.coords().array() != 0.0).count(), 4);
  }
  for (const auto& p : sample_convex_sparse_points({20, 4}, 100, rng)) {
    EXPECT_LE(p.coords().lpNorm<1>(), 4 + 1e-9);
  }
}

TEST(PointSet, DimensionChecks) {
  PointSet ps;
  EXPECT_TRUE(ps.empty());
  ps.push_back(e(3, 0));
  EXPECT_THROW(ps.push_back(e(4, 0)), DimensionMismatch);
  EXPECT_THROW(PointSet({e(3, 0), e(4, 0)}), DimensionMismatch);
  const PointSet sub = PointSet({e(3, 0), e(3, 1), e(3, 2)}).subset({2, 0}, PointSource::Packing);
  EXPECT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub[0], e(3, 2));
  EXPECT_EQ(sub.source(), PointSource::Packing);
  EXPECT_EQ(sub.matrix().rows(), 2);
}
