#include "eigengeo/fisher_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eigengeo {

namespace {

void check_index(int p, int a) {
  if (a < 0 || a >= p) {
    throw IndexOutOfRange("eigen-index " + std::to_string(a) + " out of range for p=" +
                          std::to_string(p));
  }
}

// Gamma exp(U) diag(d) exp(U)^T Gamma^T with no validation, so that finite
// difference probes may step lambda freely.
Matrix chart_product(const Vector& d, const Matrix& gamma, const SkewParams& u) {
  const Matrix frame = gamma * exp_skew(u);
  const Matrix m = frame * d.asDiagonal() * frame.transpose();
  return 0.5 * (m + m.transpose());
}

Matrix inverse_of(const Matrix& m) {
  return m.llt().solve(Matrix::Identity(m.rows(), m.cols()));
}

Matrix sigma_at(const Spectrum& sp, const SkewParams& u) {
  return chart_product(sp.lambda(), sp.gamma(), u);
}

Matrix sigma_at_lambda(const Spectrum& sp, const Vector& lambda) {
  return chart_product(lambda, sp.gamma(), SkewParams::zero(sp.dim()));
}

SkewParams shifted(int p, PairIndex st, double hs, PairIndex uv, double hu) {
  SkewParams u(p);
  u(st) += hs;
  u(uv) += hu;
  return u;
}

// Second derivative of f(u) at u = 0 along (st, uv).
template <typename F>
Matrix second_difference_u(int p, PairIndex st, PairIndex uv, double h, F&& f) {
  if (st == uv) {
    return (f(SkewParams::unit(p, st, h)) - 2.0 * f(SkewParams::zero(p)) +
            f(SkewParams::unit(p, st, -h))) /
           (h * h);
  }
  return (f(shifted(p, st, h, uv, h)) - f(shifted(p, st, h, uv, -h)) -
          f(shifted(p, st, -h, uv, h)) + f(shifted(p, st, -h, uv, -h))) /
         (4.0 * h * h);
}

template <typename F>
Matrix first_difference_lambda(const Vector& lambda, int a, double h, F&& f) {
  Vector up = lambda, down = lambda;
  up(a) += h;
  down(a) -= h;
  return (f(up) - f(down)) / (2.0 * h);
}

template <typename F>
Matrix second_difference_lambda(const Vector& lambda, int a, int b, double h, F&& f) {
  auto at = [&](double da, double db) {
    Vector l = lambda;
    l(a) += da;
    l(b) += db;
    return f(l);
  };
  if (a == b) return (at(h, 0) - 2.0 * f(lambda) + at(-h, 0)) / (h * h);
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
}

double contract(const Matrix& a, const Matrix& b) { return -0.5 * (a * b).trace(); }

}  // namespace

// ---------------------------------------------------------------------------

SymTangent::SymTangent(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("SymTangent: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("SymTangent: matrix is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
}

double metric_sigma(const SpdMatrix& s, const SymTangent& a, const SymTangent& b) {
  if (a.dim() != s.dim() || b.dim() != s.dim()) {
    throw DimensionMismatch("metric_sigma: tangent and base point dimensions differ");
  }
  Eigen::LLT<Matrix> llt(s.matrix());
  const Matrix sa = llt.solve(a.matrix());
  const Matrix sb = llt.solve(b.matrix());
  return 0.5 * (sa * sb).trace();
}

SymTangent tangent_lambda(const Spectrum& sp, int a) {
  check_index(sp.dim(), a);
  return SymTangent(sp.column(a) * sp.column(a).transpose());
}

Matrix tangent_u_formula(const Vector& lambda, const Matrix& gamma, PairIndex st) {
  const auto gs = gamma.col(st.s);
  const auto gt = gamma.col(st.t);
  const double ls = lambda(st.s), lt = lambda(st.t);
  return lt * gt * gs.transpose() - ls * gs * gt.transpose() + lt * gs * gt.transpose() -
         ls * gt * gs.transpose();
}

SymTangent tangent_u(const Spectrum& sp, PairIndex st) {
  check_pair(sp.dim(), st);
  return SymTangent(tangent_u_formula(sp.lambda(), sp.gamma(), st));
}

// ---------------------------------------------------------------------------

double SpectralMetric::u_component(PairIndex st, PairIndex uv) const {
  return st == uv ? g_u(pair_offset(dim, st)) : 0.0;
}

SpectralMetric metric_spectral(const Vector& lambda) {
  check_spectrum(lambda);
  const int p = static_cast<int>(lambda.size());
  SpectralMetric g;
  g.dim = p;
  g.g_lambda = (0.5 * lambda.array().square().inverse()).matrix();
  g.g_u.resize(pair_count(p));
  for (int k = 0; k < pair_count(p); ++k) {
    const PairIndex st = pair_at(p, k);
    const double ls = lambda(st.s), lt = lambda(st.t);
    g.g_u(k) = (ls - lt) * (ls - lt) / (ls * lt);
  }
  return g;
}

double embedding_curvature_A(const Vector& lambda, PairIndex st, PairIndex uv, int a) {
  const int p = static_cast<int>(lambda.size());
  check_pair(p, st);
  check_pair(p, uv);
  check_index(p, a);
  if (!(st == uv)) return 0.0;
  const double la = lambda(a);
  if (st.s == a) return (lambda(st.t) - la) / (la * la);
  if (st.t == a) return (lambda(st.s) - la) / (la * la);
  return 0.0;
}

double embedding_curvature_M(const Vector& lambda, int a, int b, PairIndex st) {
  const int p = static_cast<int>(lambda.size());
  check_index(p, a);
  check_index(p, b);
  check_pair(p, st);
  return 0.0;
}

CurvatureTensor::CurvatureTensor(const Vector& lambda) : dim_(static_cast<int>(lambda.size())) {
  check_spectrum(lambda);
  slabs_.reserve(pair_count(dim_));
  for (int k = 0; k < pair_count(dim_); ++k) {
    const PairIndex st = pair_at(dim_, k);
    Vector slab = Vector::Zero(dim_);
    for (int a = 0; a < dim_; ++a) slab(a) = embedding_curvature_A(lambda, st, st, a);
    slabs_.push_back(std::move(slab));
  }
}

double CurvatureTensor::operator()(PairIndex st, PairIndex uv, int a) const {
  check_pair(dim_, st);
  check_pair(dim_, uv);
  check_index(dim_, a);
  if (!(st == uv)) return 0.0;
  return slab(st)(a);
}

Vector raised_curvature(const Vector& lambda, PairIndex st, PairIndex uv) {
  const int p = static_cast<int>(lambda.size());
  Vector out = Vector::Zero(p);
  for (int a = 0; a < p; ++a) {
    // g^{ba} is diagonal with g^{aa} = 2 lambda_a^2.
    out(a) = embedding_curvature_A(lambda, st, uv, a) * 2.0 * lambda(a) * lambda(a);
  }
  return out;
}

double statistical_curvature(const Vector& lambda) {
  check_spectrum(lambda);
  double sum = 0.0;
  for (Eigen::Index a = 0; a < lambda.size(); ++a) {
    for (Eigen::Index b = a + 1; b < lambda.size(); ++b) {
      const double d = lambda(a) - lambda(b);
      sum += (lambda(a) * lambda(a) + lambda(b) * lambda(b)) / (d * d);
    }
  }
  return 2.0 * sum;
}

// ---------------------------------------------------------------------------

FdSteps FdSteps::for_spectrum(const Vector& lambda) {
  const double scale = std::max(1.0, lambda.size() > 0 ? lambda(0) : 1.0);
  FdSteps steps;
  steps.first = 1e-5 * scale;
  // u is an angle, so its step does not scale with lambda.
  steps.second = 1e-4;
  return steps;
}

SymTangent tangent_lambda_fd(const Spectrum& sp, int a, double h) {
  check_index(sp.dim(), a);
  return SymTangent(first_difference_lambda(sp.lambda(), a, h,
                                            [&](const Vector& l) { return sigma_at_lambda(sp, l); }));
}

SymTangent tangent_u_fd(const Spectrum& sp, PairIndex st, double h) {
  const int p = sp.dim();
  check_pair(p, st);
  const Matrix d =
      (sigma_at(sp, SkewParams::unit(p, st, h)) - sigma_at(sp, SkewParams::unit(p, st, -h))) /
      (2.0 * h);
  return SymTangent(d);
}

double curvature_oracle_A(const Spectrum& base, PairIndex st, PairIndex uv, int a, double h) {
  const int p = base.dim();
  check_pair(p, st);
  check_pair(p, uv);
  check_index(p, a);
  const Matrix second =
      second_difference_u(p, st, uv, h, [&](const SkewParams& u) { return sigma_at(base, u); });
  const double h1 = FdSteps::for_spectrum(base.lambda()).first;
  const Matrix dinv = first_difference_lambda(
      base.lambda(), a, h1, [&](const Vector& l) { return inverse_of(sigma_at_lambda(base, l)); });
  return contract(second, dinv);
}

double curvature_oracle_A(const Spectrum& base, PairIndex st, PairIndex uv, int a) {
  return curvature_oracle_A(base, st, uv, a, FdSteps::for_spectrum(base.lambda()).second);
}

double curvature_oracle_M(const Spectrum& base, Connection kind, int a, int b, PairIndex st,
                          double h_first, double h_second) {
  const int p = base.dim();
  check_index(p, a);
  check_index(p, b);
  check_pair(p, st);
  auto sigma_l = [&](const Vector& l) { return sigma_at_lambda(base, l); };
  auto precision_l = [&](const Vector& l) { return inverse_of(sigma_at_lambda(base, l)); };
  auto du = [&](auto&& f) {
    return Matrix((f(SkewParams::unit(p, st, h_first)) - f(SkewParams::unit(p, st, -h_first))) /
                  (2.0 * h_first));
  };
  if (kind == Connection::kExponential) {
    const Matrix second = second_difference_lambda(base.lambda(), a, b, h_second, precision_l);
    const Matrix first = du([&](const SkewParams& u) { return sigma_at(base, u); });
    return contract(second, first);
  }
  const Matrix second = second_difference_lambda(base.lambda(), a, b, h_second, sigma_l);
  const Matrix first = du([&](const SkewParams& u) { return inverse_of(sigma_at(base, u)); });
  return contract(second, first);
}

}  // namespace eigengeo
