#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eigengeo/ensemble.hpp"
#include "test_support.hpp"

namespace eigengeo {
namespace {

double weight_sum(const OrthogonalEnsemble& e) {
  double s = 0.0;
  for (double w : e.weights) s += w;
  return s;
}

TEST(O2Equidistant, TwoPointsAreIdentityAndQuarterTurn) {
  const OrthogonalEnsemble e = o2_equidistant(2);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_LT((e.matrices[0] - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((e.matrices[1] - rotation2(std::numbers::pi / 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(o2_equidistant(1), DomainError);
}

TEST(O2Equidistant, MembersAreRotationsWithUniformWeights) {
  const OrthogonalEnsemble e = o2_equidistant(50);
  ASSERT_EQ(e.size(), 50u);
  EXPECT_EQ(e.dim, 2);
  EXPECT_EQ(e.kind, EnsembleKind::kEquidistantO2);
  for (const Matrix& g : e.matrices) {
    EXPECT_LT(orthogonality_error(g), 1e-15);
    EXPECT_NEAR(g.determinant(), 1.0, 1e-15);
  }
  EXPECT_NEAR(weight_sum(e), 1.0, 1e-14);
}

TEST(O2Equidistant, AveragesConjugatedDiagonalExactly) {
  Vector d(2);
  d << 2.0, 1.0;
  for (int k : {3, 50, 100}) {
    const OrthogonalEnsemble e = o2_equidistant(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Matrix& g = e.matrices[i];
      acc += e.weights[i] * (g.transpose() * d.asDiagonal() * g)(0, 0);
    }
    EXPECT_NEAR(acc, 1.5, 1e-12) << "K=" << k;
  }
}

// Reflections and half-turn shifts give the same integrands, so integrating
// over rotations in [0, pi) equals integrating over the whole of O(2) with a
// fine grid that includes reflections.
TEST(O2Equidistant, HalfCircleRepresentsAllOfO2) {
  Vector l(2), eta(2);
  l << 3.0, 1.0;
  eta << 0.7, 1.9;
  auto integrand = [&](const Matrix& h) {
    const Matrix c = h * l.asDiagonal() * h.transpose();
    return std::exp(-0.5 * c.diagonal().dot(eta));
  };
  const OrthogonalEnsemble half = o2_equidistant(64);
  double a = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) a += half.weights[i] * integrand(half.matrices[i]);
  double b = 0.0;
  const int m = 512;
  Matrix flip = Matrix::Identity(2, 2);
  flip(1, 1) = -1.0;
  for (int i = 0; i < m; ++i) {
    const Matrix r = rotation2(2.0 * std::numbers::pi * i / m);
    b += 0.5 * integrand(r) / m + 0.5 * integrand(r * flip) / m;
  }
  EXPECT_NEAR(a, b, 1e-13);
}

TEST(HaarSample, OrthonormalDeterministicAndUnbiased) {
  const OrthogonalEnsemble e1 = haar_sample(3, 200, 42);
  const OrthogonalEnsemble e2 = haar_sample(3, 200, 42);
  ASSERT_EQ(e1.size(), 200u);
  for (std::size_t i = 0; i < e1.size(); ++i) {
    EXPECT_EQ(e1.matrices[i], e2.matrices[i]);
    const Matrix& g = e1.matrices[i];
    EXPECT_LT(orthogonality_error(g), 1e-12);
  }
  EXPECT_NEAR(weight_sum(e1), 1.0, 1e-12);

  // E[(G^T D G)_11] = tr(D) / p under Haar measure.
  const int m = 100000;
  const OrthogonalEnsemble big = haar_sample(2, m, 7);
  Vector d(2);
  d << 2.0, 1.0;
  double sum = 0.0, sum2 = 0.0;
  for (const Matrix& g : big.matrices) {
    const double x = (g.transpose() * d.asDiagonal() * g)(0, 0);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / m;
  const double se = std::sqrt((sum2 / m - mean * mean) / (m - 1));
  EXPECT_LT(std::abs(mean - 1.5), 3.0 * se);
}

TEST(HaarSample, RotationAnglesAreUniform) {
  // For p = 2, the first column angle of a Haar draw is uniform on the circle.
  const int m = 40000;
  const OrthogonalEnsemble e = haar_sample(2, m, 11);
  std::vector<int> bins(8, 0);
  for (const Matrix& g : e.matrices) {
    double t = std::atan2(g(1, 0), g(0, 0));
    if (t < 0) t += 2 * std::numbers::pi;
    bins[static_cast<int>(t / (2 * std::numbers::pi) * 8) % 8]++;
  }
  double chi2 = 0.0;
  for (int b : bins) chi2 += (b - m / 8.0) * (b - m / 8.0) / (m / 8.0);
  EXPECT_LT(chi2, 24.3);  // chi-square 7 df, p = 0.001
}

TEST(EnsembleSpec, ParsesAndRoundTrips) {
  const EnsembleSpec a = EnsembleSpec::parse("equidistant:50");
  EXPECT_EQ(a.kind, EnsembleKind::kEquidistantO2);
  EXPECT_EQ(a.size, 50);
  EXPECT_EQ(a.to_string(), "equidistant:50");
  const EnsembleSpec b = EnsembleSpec::parse("haar:4096");
  EXPECT_EQ(b.kind, EnsembleKind::kHaarMonteCarlo);
  EXPECT_EQ(b.to_string(), "haar:4096");
  for (const char* bad : {"", "haar", "haar:", "haar:x", "haar:0", "equidistant:1", "grid:5", "haar:5z"}) {
    EXPECT_THROW(EnsembleSpec::parse(bad), DomainError) << bad;
  }
}

TEST(EnsembleSpec, DefaultsAndDimensionGuard) {
  EXPECT_EQ(default_estimation_ensemble(2).to_string(), "equidistant:50");
  EXPECT_EQ(default_estimation_ensemble(3).to_string(), "haar:4096");
  EXPECT_EQ(default_density_ensemble(2).to_string(), "equidistant:100");
  EXPECT_EQ(default_density_ensemble(4).to_string(), "haar:8192");
  EXPECT_THROW(make_ensemble(EnsembleSpec::parse("equidistant:10"), 3, 1), DomainError);
  EXPECT_EQ(make_ensemble(EnsembleSpec::parse("haar:10"), 3, 1).dim, 3);
}

}  // namespace
}  // namespace eigengeo
