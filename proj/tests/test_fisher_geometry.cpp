#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eigengeo/fisher_geometry.hpp"
#include "test_support.hpp"

namespace eigengeo {
namespace {

using testing::random_point;
using testing::random_spectrum;
using testing::test_rng;

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Matrix unit_sym(int p, int i, int j) {
  Matrix m = Matrix::Zero(p, p);
  m(i, j) = 1.0;
  m(j, i) = 1.0;
  return m;
}

// Full Gram matrix of the metric over the basis (d_lambda_1..p, d_u_pairs),
// built from metric_sigma on analytic tangents and inverted numerically. It
// never touches the closed-form SpectralMetric.
struct GramOracle {
  Matrix g;
  Matrix inv;
  int p = 0;

  explicit GramOracle(const Spectrum& sp) : p(sp.dim()) {
    const SpdMatrix sigma = compose(sp);
    std::vector<SymTangent> basis;
    for (int a = 0; a < p; ++a) basis.push_back(tangent_lambda(sp, a));
    for (int k = 0; k < pair_count(p); ++k) basis.push_back(tangent_u(sp, pair_at(p, k)));
    const auto d = static_cast<Eigen::Index>(basis.size());
    g.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = metric_sigma(sigma, basis[i], basis[j]);
    }
    inv = g.inverse();
  }
  double inv_lambda(int a, int b) const { return inv(a, b); }
  double inv_u(int k, int l) const { return inv(p + k, p + l); }
};

TEST(MetricSigma, BasisValuesAtIdentity) {
  const SpdMatrix id = SpdMatrix::identity(2);
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  EXPECT_DOUBLE_EQ(metric_sigma(id, SymTangent(e11), SymTangent(e11)), 0.5);
  const SymTangent e12(unit_sym(2, 0, 1));
  EXPECT_DOUBLE_EQ(metric_sigma(id, e12, e12), 1.0);
}

TEST(MetricSigma, BilinearSymmetricPositive) {
  Rng rng = test_rng(1, 1000);
  const SpdMatrix s = testing::random_spd(3, rng);
  const SymTangent a(unit_sym(3, 0, 2) + 0.3 * unit_sym(3, 1, 1));
  const SymTangent b(unit_sym(3, 1, 2) - unit_sym(3, 0, 0));
  const SymTangent a2(2.0 * a.matrix());
  EXPECT_NEAR(metric_sigma(s, a2, b), 2.0 * metric_sigma(s, a, b), 1e-14);
  EXPECT_NEAR(metric_sigma(s, a, b), metric_sigma(s, b, a), 1e-14);
  EXPECT_GT(metric_sigma(s, a, a), 0.0);
  Matrix lopsided(2, 2);
  lopsided << 1, 1, 0, 1;
  EXPECT_THROW(SymTangent{lopsided}, DomainError);
}

TEST(TangentLambda, OuterProductOfEigenvector) {
  const Spectrum id(vec({2, 1}), Matrix::Identity(2, 2));
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  EXPECT_EQ(tangent_lambda(id, 0).matrix(), e11);
  const Spectrum rot(vec({2, 1}), rotation2(std::numbers::pi / 4));
  EXPECT_LT((tangent_lambda(rot, 0).matrix() - Matrix::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff(),
            1e-15);
  Rng rng = test_rng(2, 1000);
  const Spectrum sp = random_point(4, rng);
  for (int a = 0; a < 4; ++a) EXPECT_NEAR(tangent_lambda(sp, a).matrix().trace(), 1.0, 1e-14);
  EXPECT_THROW(tangent_lambda(sp, 4), IndexOutOfRange);
}

TEST(TangentU, TwoByTwoExample) {
  const Spectrum sp(vec({2, 1}), Matrix::Identity(2, 2));
  Matrix expect(2, 2);
  expect << 0, -1, -1, 0;
  EXPECT_EQ(tangent_u(sp, {0, 1}).matrix(), expect);
  EXPECT_THROW(tangent_u(sp, {1, 0}), IndexOutOfRange);
}

// The unsymmetrized four-term expression of d Sigma / d u_st.
TEST(TangentU, MatchesFourTermExpression) {
  Rng rng = test_rng(3, 1000);
  for (int p : {2, 3, 4}) {
    const Spectrum sp = random_point(p, rng);
    for (int k = 0; k < pair_count(p); ++k) {
      const PairIndex st = pair_at(p, k);
      const Vector gs = sp.column(st.s), gt = sp.column(st.t);
      const double ls = sp.lambda()(st.s), lt = sp.lambda()(st.t);
      const Matrix four = lt * gt * gs.transpose() - ls * gs * gt.transpose() +
                          lt * gs * gt.transpose() - ls * gt * gs.transpose();
      EXPECT_LT((tangent_u(sp, st).matrix() - four).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(TangentU, FormulaVanishesAtEqualEigenvalues) {
  EXPECT_EQ(tangent_u_formula(vec({1.5, 1.5, 1.0}), Matrix::Identity(3, 3), {0, 1}),
            Matrix::Zero(3, 3));
}

TEST(TangentU, CentralDifferenceOracle) {
  Rng rng = test_rng(4, 1000);
  for (int p : {2, 3, 4}) {
    const Spectrum sp = random_point(p, rng);
    for (int k = 0; k < pair_count(p); ++k) {
      const PairIndex st = pair_at(p, k);
      const Matrix fd = tangent_u_fd(sp, st, 1e-5).matrix();
      EXPECT_LT((fd - tangent_u(sp, st).matrix()).cwiseAbs().maxCoeff(), 1e-6);
    }
    for (int a = 0; a < p; ++a) {
      const Matrix fd = tangent_lambda_fd(sp, a, 1e-5 * sp.lambda()(0)).matrix();
      EXPECT_LT((fd - tangent_lambda(sp, a).matrix()).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(MetricSpectral, KnownValues) {
  const SpectralMetric g = metric_spectral(vec({2, 1}));
  EXPECT_DOUBLE_EQ(g.g_lambda(0), 0.125);
  EXPECT_DOUBLE_EQ(g.g_lambda(1), 0.5);
  EXPECT_DOUBLE_EQ(g.g_u(0), 0.5);
  const SpectralMetric g3 = metric_spectral(vec({3, 2, 1}));
  EXPECT_NEAR(g3.u_component({0, 2}, {0, 2}), 4.0 / 3.0, 1e-15);
  EXPECT_EQ(g3.u_component({0, 1}, {0, 2}), 0.0);
  EXPECT_DOUBLE_EQ(g3.inverse_lambda()(0), 18.0);
  EXPECT_THROW(metric_spectral(vec({1, 1})), NearDegenerateSpectrum);
}

TEST(MetricSpectral, VanishingPairComponentNearDegeneracy) {
  double prev = 1.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double gu = metric_spectral(vec({1.0, 1.0 - eps})).g_u(0);
    EXPECT_LT(gu, prev);
    prev = gu;
  }
  EXPECT_LT(prev, 1e-7);
}

TEST(MetricSpectral, EqualsSigmaFormOnAnalyticTangentsAtAnyFrame) {
  for (int p : {2, 3, 4}) {
    for (std::uint64_t c = 0; c < 10; ++c) {
      Rng rng = test_rng(c, 1100 + p);
      const Spectrum sp = random_point(p, rng);
      const GramOracle oracle(sp);
      const SpectralMetric g = metric_spectral(sp.lambda());
      const int d = p + pair_count(p);
      Matrix closed = Matrix::Zero(d, d);
      for (int a = 0; a < p; ++a) closed(a, a) = g.g_lambda(a);
      for (int k = 0; k < pair_count(p); ++k) closed(p + k, p + k) = g.g_u(k);
      EXPECT_LT((oracle.g - closed).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, closed.maxCoeff()));
    }
  }
}

TEST(MetricSpectral, EqualsFiniteDifferencePipeline) {
  for (int p : {2, 3, 4}) {
    Rng rng = test_rng(p, 1200);
    const Spectrum sp = random_point(p, rng);
    const SpdMatrix sigma = compose(sp);
    const FdSteps h = FdSteps::for_spectrum(sp.lambda());
    const SpectralMetric g = metric_spectral(sp.lambda());
    for (int a = 0; a < p; ++a) {
      const SymTangent t = tangent_lambda_fd(sp, a, h.first);
      EXPECT_NEAR(metric_sigma(sigma, t, t), g.g_lambda(a), 1e-6 * g.g_lambda(a));
      for (int k = 0; k < pair_count(p); ++k) {
        const SymTangent tu = tangent_u_fd(sp, pair_at(p, k), h.first);
        EXPECT_NEAR(metric_sigma(sigma, t, tu), 0.0, 1e-6);
      }
    }
    for (int k = 0; k < pair_count(p); ++k) {
      const SymTangent tu = tangent_u_fd(sp, pair_at(p, k), h.first);
      EXPECT_NEAR(metric_sigma(sigma, tu, tu), g.g_u(k), 1e-6 * g.g_u(k));
    }
  }
}

TEST(EmbeddingCurvatureA, KnownValues) {
  const Vector l = vec({2, 1});
  EXPECT_DOUBLE_EQ(embedding_curvature_A(l, {0, 1}, {0, 1}, 0), -0.25);
  EXPECT_DOUBLE_EQ(embedding_curvature_A(l, {0, 1}, {0, 1}, 1), 1.0);
  const Vector l3 = vec({3, 2, 1});
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(embedding_curvature_A(l3, {0, 1}, {0, 2}, a), 0.0);
  }
  // Third index outside the pair.
  EXPECT_EQ(embedding_curvature_A(l3, {0, 1}, {0, 1}, 2), 0.0);
  EXPECT_THROW(embedding_curvature_A(l3, {0, 1}, {0, 1}, 3), IndexOutOfRange);
}

TEST(EmbeddingCurvatureA, SymmetricInPairsAndSparseStorageAgrees) {
  Rng rng = test_rng(5, 1000);
  const Vector l = random_spectrum(4, rng);
  const CurvatureTensor h(l);
  for (int k = 0; k < pair_count(4); ++k) {
    for (int m = 0; m < pair_count(4); ++m) {
      for (int a = 0; a < 4; ++a) {
        const PairIndex st = pair_at(4, k), uv = pair_at(4, m);
        EXPECT_EQ(embedding_curvature_A(l, st, uv, a), embedding_curvature_A(l, uv, st, a));
        EXPECT_EQ(h(st, uv, a), embedding_curvature_A(l, st, uv, a));
      }
    }
  }
}

TEST(EmbeddingCurvatureA, MatchesSecondDifferenceOracle) {
  for (int p : {2, 3, 4}) {
    for (std::uint64_t c = 0; c < 4; ++c) {
      Rng rng = test_rng(c, 1300 + p);
      const Spectrum sp = random_point(p, rng);
      for (int k = 0; k < pair_count(p); ++k) {
        for (int m = 0; m < pair_count(p); ++m) {
          for (int a = 0; a < p; ++a) {
            const PairIndex st = pair_at(p, k), uv = pair_at(p, m);
            const double analytic = embedding_curvature_A(sp.lambda(), st, uv, a);
            const double oracle = curvature_oracle_A(sp, st, uv, a);
            EXPECT_NEAR(oracle, analytic, 1e-5 * std::max(1.0, std::abs(analytic)));
          }
        }
      }
    }
  }
}

TEST(EmbeddingCurvatureA, OracleSpotValueAndFrameIndependence) {
  const Spectrum id(vec({2, 1}), Matrix::Identity(2, 2));
  EXPECT_NEAR(curvature_oracle_A(id, {0, 1}, {0, 1}, 0), -0.25, 1e-6);
  Rng rng = test_rng(6, 1000);
  const Vector l = vec({3, 2, 1});
  const Spectrum base(l, Matrix::Identity(3, 3));
  EXPECT_NEAR(curvature_oracle_A(base, {0, 1}, {0, 2}, 0), 0.0, 1e-6);
  for (int rep = 0; rep < 10; ++rep) {
    const Spectrum other(l, testing::random_orthogonal(3, rng));
    for (int a = 0; a < 3; ++a) {
      EXPECT_NEAR(curvature_oracle_A(other, {0, 2}, {0, 2}, a),
                  curvature_oracle_A(base, {0, 2}, {0, 2}, a), 1e-6);
    }
  }
}

TEST(EmbeddingCurvatureM, ZeroAnalyticallyAndByOracle) {
  for (int p : {2, 3}) {
    Rng rng = test_rng(p, 1400);
    const Spectrum sp = random_point(p, rng);
    const FdSteps h = FdSteps::for_spectrum(sp.lambda());
    for (int a = 0; a < p; ++a) {
      for (int b = 0; b < p; ++b) {
        for (int k = 0; k < pair_count(p); ++k) {
          const PairIndex st = pair_at(p, k);
          EXPECT_EQ(embedding_curvature_M(sp.lambda(), a, b, st), 0.0);
          const double hs = 1e-3 * std::max(1.0, sp.lambda()(0));
          EXPECT_NEAR(curvature_oracle_M(sp, Connection::kExponential, a, b, st, h.first, hs), 0.0,
                      1e-5);
          EXPECT_NEAR(curvature_oracle_M(sp, Connection::kMixture, a, b, st, h.first, hs), 0.0, 1e-5);
        }
      }
    }
  }
}

TEST(RaisedCurvature, KnownValueAndZeroOffDiagonalPairs) {
  const Vector r = raised_curvature(vec({2, 1}), {0, 1}, {0, 1});
  EXPECT_DOUBLE_EQ(r(0), -2.0);
  EXPECT_DOUBLE_EQ(r(1), 2.0);
  EXPECT_EQ(raised_curvature(vec({3, 2, 1}), {0, 1}, {0, 2}), Vector::Zero(3));
}

TEST(RaisedCurvature, EqualsLoweredTimesNumericalInverseMetric) {
  Rng rng = test_rng(7, 1000);
  const Spectrum sp = random_point(4, rng);
  const GramOracle oracle(sp);
  for (int k = 0; k < pair_count(4); ++k) {
    for (int m = 0; m < pair_count(4); ++m) {
      const PairIndex st = pair_at(4, k), uv = pair_at(4, m);
      const Vector r = raised_curvature(sp.lambda(), st, uv);
      for (int a = 0; a < 4; ++a) {
        double expect = 0.0;
        for (int b = 0; b < 4; ++b) {
          expect += embedding_curvature_A(sp.lambda(), st, uv, b) * oracle.inv_lambda(b, a);
        }
        EXPECT_NEAR(r(a), expect, 1e-10 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST(StatisticalCurvature, KnownValues) {
  EXPECT_DOUBLE_EQ(statistical_curvature(vec({2, 1})), 10.0);
  EXPECT_DOUBLE_EQ(statistical_curvature(vec({3, 1})), 5.0);
  for (double c : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(statistical_curvature(vec({1, c})), 2 * (1 + c * c) / ((1 - c) * (1 - c)), 1e-12);
  }
  EXPECT_THROW(statistical_curvature(vec({1, 1})), NearDegenerateSpectrum);
}

// gamma = sum over every (s<t),(u<v),(o<q),(r<w),a,b of
//   H_(s,t)(u,v)a H_(o,q)(r,w)b g^{(s,t)(o,q)} g^{(u,v)(r,w)} g^{ab},
// with the inverse metric from the numerically inverted Gram matrix.
TEST(StatisticalCurvature, EqualsBruteForceContraction) {
  for (int p : {2, 3, 4}) {
    for (std::uint64_t c = 0; c < 5; ++c) {
      Rng rng = test_rng(c, 1500 + p);
      const Spectrum sp = random_point(p, rng);
      const GramOracle oracle(sp);
      const Vector& l = sp.lambda();
      const int np = pair_count(p);
      double total = 0.0;
      for (int i1 = 0; i1 < np; ++i1)
        for (int i2 = 0; i2 < np; ++i2)
          for (int i3 = 0; i3 < np; ++i3)
            for (int i4 = 0; i4 < np; ++i4)
              for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b) {
                  total += embedding_curvature_A(l, pair_at(p, i1), pair_at(p, i2), a) *
                           embedding_curvature_A(l, pair_at(p, i3), pair_at(p, i4), b) *
                           oracle.inv_u(i1, i3) * oracle.inv_u(i2, i4) * oracle.inv_lambda(a, b);
                }
      const double closed = statistical_curvature(l);
      EXPECT_NEAR(closed, total, 1e-10 * std::max(1.0, closed)) << "p=" << p;
    }
  }
}

TEST(StatisticalCurvature, IncreasingInEigenvalueRatio) {
  double prev = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double g = statistical_curvature(vec({1.0, i / 100.0}));
    EXPECT_GT(g, prev);
    prev = g;
  }
}

}  // namespace
}  // namespace eigengeo
