#include "eigengeo/spd_manifold.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace eigengeo {

namespace {

Matrix mirror_upper(const Matrix& m) {
  Matrix out = m.triangularView<Eigen::Upper>();
  out.triangularView<Eigen::StrictlyLower>() = m.triangularView<Eigen::StrictlyUpper>().transpose();
  return out;
}

}  // namespace

int pair_count(int p) { return p * (p - 1) / 2; }

int pair_offset(int p, PairIndex st) {
  check_pair(p, st);
  // pairs before row s: sum_{r<s} (p-1-r)
  return st.s * (2 * p - st.s - 1) / 2 + (st.t - st.s - 1);
}

PairIndex pair_at(int p, int offset) {
  if (offset < 0 || offset >= pair_count(p)) {
    throw IndexOutOfRange("pair offset " + std::to_string(offset) + " out of range for p=" +
                          std::to_string(p));
  }
  int s = 0;
  int remaining = offset;
  while (remaining >= p - 1 - s) {
    remaining -= p - 1 - s;
    ++s;
  }
  return {s, s + 1 + remaining};
}

void check_pair(int p, PairIndex st) {
  if (st.s < 0 || st.t >= p || st.s >= st.t) {
    throw IndexOutOfRange("pair (" + std::to_string(st.s) + "," + std::to_string(st.t) +
                          ") is not a valid s<t pair for p=" + std::to_string(p));
  }
}

// ---------------------------------------------------------------------------

SpdMatrix::SpdMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatch("SpdMatrix: expected a non-empty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw NotPositiveDefinite("SpdMatrix: non-finite entry");
  m_ = mirror_upper(m);
  const double trace = m_.trace();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  const double smallest = es.eigenvalues()(0);
  if (!(trace > 0.0) || !(smallest > tolerance::kPositivity * trace)) {
    std::ostringstream os;
    os << "SpdMatrix: smallest eigenvalue " << smallest << " is not above "
       << tolerance::kPositivity << " * trace (" << trace << ")";
    throw NotPositiveDefinite(os.str());
  }
}

SpdMatrix SpdMatrix::diagonal(const Vector& d) { return SpdMatrix(Matrix(d.asDiagonal())); }

// ---------------------------------------------------------------------------

void check_spectrum(const Vector& lambda) {
  if (lambda.size() < 1) throw DomainError("spectrum: empty eigenvalue vector");
  if (!lambda.allFinite()) throw DomainError("spectrum: non-finite eigenvalue");
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (!(lambda(i) > 0.0)) {
      throw DomainError("spectrum: eigenvalue " + std::to_string(i + 1) + " is not positive");
    }
  }
  const double tol = tolerance::kGapRelative * lambda(0);
  for (Eigen::Index i = 0; i + 1 < lambda.size(); ++i) {
    const double gap = lambda(i) - lambda(i + 1);
    if (gap < tol) {
      std::ostringstream os;
      os << "near-degenerate spectrum: gap lambda_" << i + 1 << " - lambda_" << i + 2 << " = "
         << gap << " is below tolerance " << tol;
      throw NearDegenerateSpectrum(os.str(), gap, tol);
    }
  }
}

double orthogonality_error(const Matrix& gamma) {
  const auto p = gamma.cols();
  return (gamma.transpose() * gamma - Matrix::Identity(p, p)).cwiseAbs().maxCoeff();
}

Spectrum::Spectrum(Vector lambda, Matrix gamma) : lambda_(std::move(lambda)), gamma_(std::move(gamma)) {
  const auto p = lambda_.size();
  if (gamma_.rows() != p || gamma_.cols() != p) {
    throw DimensionMismatch("Spectrum: gamma must be " + std::to_string(p) + "x" + std::to_string(p));
  }
  check_spectrum(lambda_);
  if (!gamma_.allFinite() || orthogonality_error(gamma_) > tolerance::kOrthogonality) {
    throw DomainError("Spectrum: eigenvector matrix is not orthogonal");
  }
  for (Eigen::Index a = 0; a < p; ++a) {
    Eigen::Index arg = 0;
    gamma_.col(a).cwiseAbs().maxCoeff(&arg);
    if (gamma_(arg, a) < 0.0) gamma_.col(a) = -gamma_.col(a);
  }
}

// ---------------------------------------------------------------------------

SkewParams::SkewParams(int p) : p_(p), u_(Vector::Zero(pair_count(p))) {
  if (p < 1) throw DomainError("SkewParams: dimension must be positive");
}

SkewParams::SkewParams(int p, Vector u) : p_(p), u_(std::move(u)) {
  if (p < 1) throw DomainError("SkewParams: dimension must be positive");
  if (u_.size() != pair_count(p)) {
    throw DimensionMismatch("SkewParams: expected " + std::to_string(pair_count(p)) +
                            " coordinates, got " + std::to_string(u_.size()));
  }
  if (!u_.allFinite()) throw DomainError("SkewParams: non-finite coordinate");
}

SkewParams SkewParams::unit(int p, PairIndex st, double value) {
  SkewParams u(p);
  u(st) = value;
  return u;
}

Matrix SkewParams::skew_matrix() const {
  Matrix U = Matrix::Zero(p_, p_);
  for (int k = 0; k < u_.size(); ++k) {
    const PairIndex st = pair_at(p_, k);
    U(st.s, st.t) = u_(k);
    U(st.t, st.s) = -u_(k);
  }
  return U;
}

// ---------------------------------------------------------------------------

NaturalCoords::NaturalCoords(Matrix upper) : theta_(std::move(upper)) {
  if (theta_.rows() != theta_.cols()) throw DimensionMismatch("NaturalCoords: not square");
  theta_.triangularView<Eigen::StrictlyLower>().setZero();
}

double NaturalCoords::theta(int i, int j) const { return i <= j ? theta_(i, j) : theta_(j, i); }

// ---------------------------------------------------------------------------

Spectrum spectral_decompose(const SpdMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix());
  if (es.info() != Eigen::Success) throw NumericError("spectral_decompose: eigensolver failed");
  // Eigen returns ascending order.
  const Vector lambda = es.eigenvalues().reverse();
  const Matrix gamma = es.eigenvectors().rowwise().reverse();
  return Spectrum(lambda, gamma);
}

SpdMatrix compose(const Spectrum& sp) {
  const Matrix& g = sp.gamma();
  const Matrix m = g * sp.lambda().asDiagonal() * g.transpose();
  return SpdMatrix(0.5 * (m + m.transpose()));
}

Matrix exp_skew(const SkewParams& u) {
  const int p = u.dim();
  if (p == 2) {
    const double a = u.values()(0);
    Matrix o(2, 2);
    o << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
    return o;
  }
  const Matrix U = u.skew_matrix();
  const double norm = p > 0 ? U.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix A = U / std::ldexp(1.0, squarings);

  Matrix result = Matrix::Identity(p, p);
  Matrix term = Matrix::Identity(p, p);
  for (int k = 1; k <= 30; ++k) {
    term = term * A / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

SpdMatrix sigma_of_coords(const Spectrum& base, const SkewParams& u) {
  if (u.dim() != base.dim()) throw DimensionMismatch("sigma_of_coords: dimension mismatch");
  const Matrix frame = base.gamma() * exp_skew(u);
  const Matrix m = frame * base.lambda().asDiagonal() * frame.transpose();
  return SpdMatrix(0.5 * (m + m.transpose()));
}

NaturalCoords to_natural(const SpdMatrix& s) {
  const int p = s.dim();
  const Matrix inv = s.matrix().llt().solve(Matrix::Identity(p, p));
  Matrix theta = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    theta(i, i) = -0.5 * inv(i, i);
    for (int j = i + 1; j < p; ++j) theta(i, j) = -0.5 * (inv(i, j) + inv(j, i));
  }
  return NaturalCoords(theta);
}

SpdMatrix from_natural(const NaturalCoords& theta) {
  const int p = theta.dim();
  Matrix precision(p, p);
  for (int i = 0; i < p; ++i) {
    precision(i, i) = -2.0 * theta.theta(i, i);
    for (int j = i + 1; j < p; ++j) precision(i, j) = precision(j, i) = -theta.theta(i, j);
  }
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("from_natural: implied precision matrix is not positive definite");
  }
  const Matrix sigma = llt.solve(Matrix::Identity(p, p));
  return SpdMatrix(0.5 * (sigma + sigma.transpose()));
}

double kl_divergence(const SpdMatrix& s, const SpdMatrix& t) {
  if (s.dim() != t.dim()) {
    throw DimensionMismatch("kl_divergence: dimensions " + std::to_string(s.dim()) + " and " +
                            std::to_string(t.dim()));
  }
  Eigen::LLT<Matrix> lt(t.matrix());
  Eigen::LLT<Matrix> ls(s.matrix());
  const double trace = lt.solve(s.matrix()).trace();
  const Vector dt = Matrix(lt.matrixL()).diagonal();
  const Vector ds = Matrix(ls.matrixL()).diagonal();
  const double logdet = 2.0 * (ds.array().log().sum() - dt.array().log().sum());
  return trace - logdet - static_cast<double>(s.dim());
}

Vector kl_project(const SpdMatrix& s, const Matrix& gamma) {
  if (gamma.rows() != s.dim() || gamma.cols() != s.dim()) {
    throw DimensionMismatch("kl_project: frame dimension does not match");
  }
  return (gamma.transpose() * s.matrix() * gamma).diagonal();
}

Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace eigengeo
