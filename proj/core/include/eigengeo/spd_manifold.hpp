#pragma once

// Coordinate systems on the manifold of zero-mean Gaussian covariances:
// the covariance entries sigma_ij, the natural (canonical) parameters theta,
// and spectral coordinates (lambda, u) where u charts the eigenvector frame
// through Gamma * exp(U(u)).
//
// Indices in this API are 0-based. Eigenvalue vectors are strictly
// descending.

#include <Eigen/Dense>

#include "eigengeo/errors.hpp"

namespace eigengeo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tolerance {
inline constexpr double kGapRelative = 1e-8;      // eigenvalue gap, relative to lambda_1
inline constexpr double kPositivity = 1e-12;      // smallest eigenvalue, relative to trace
inline constexpr double kRoundtrip = 1e-10;       // relative Frobenius error of round trips
inline constexpr double kOrthogonality = 1e-10;   // max |G^T G - I|
}  // namespace tolerance

// Pair (s, t) with s < t labelling a coordinate u_st of the orthogonal group.
struct PairIndex {
  int s = 0;
  int t = 1;
  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

// Number of pairs s < t for dimension p, i.e. p(p-1)/2.
int pair_count(int p);
// Flat offset of (s, t): row-major over s < t, so (0,1),(0,2),...,(0,p-1),(1,2),...
int pair_offset(int p, PairIndex st);
PairIndex pair_at(int p, int offset);
void check_pair(int p, PairIndex st);

class SpdMatrix {
 public:
  // Reads the upper triangle of m and mirrors it, so the stored matrix is
  // exactly symmetric. Throws NotPositiveDefinite unless every eigenvalue
  // exceeds kPositivity * trace.
  explicit SpdMatrix(const Matrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  static SpdMatrix identity(int p) { return SpdMatrix(Matrix::Identity(p, p)); }
  static SpdMatrix diagonal(const Vector& d);

 private:
  Matrix m_;
};

// Throws NearDegenerateSpectrum unless lambda is strictly descending with
// every consecutive gap >= kGapRelative * lambda_1, and DomainError if any
// entry is not strictly positive.
void check_spectrum(const Vector& lambda);

class Spectrum {
 public:
  // Validates ordering, gaps and orthogonality of gamma. Columns of gamma are
  // flipped so that each column's largest-magnitude entry is positive (first
  // such entry on ties); this fixes the eigenvector sign ambiguity.
  Spectrum(Vector lambda, Matrix gamma);

  int dim() const { return static_cast<int>(lambda_.size()); }
  const Vector& lambda() const { return lambda_; }
  const Matrix& gamma() const { return gamma_; }
  auto column(int a) const { return gamma_.col(a); }

 private:
  Vector lambda_;
  Matrix gamma_;
};

// Coordinates u_st (s < t) of a skew-symmetric matrix U with U_st = u_st,
// U_ts = -u_st.
class SkewParams {
 public:
  explicit SkewParams(int p);
  SkewParams(int p, Vector u);

  static SkewParams zero(int p) { return SkewParams(p); }
  static SkewParams unit(int p, PairIndex st, double value);

  int dim() const { return p_; }
  const Vector& values() const { return u_; }
  double operator()(PairIndex st) const { return u_(pair_offset(p_, st)); }
  double& operator()(PairIndex st) { return u_(pair_offset(p_, st)); }

  Matrix skew_matrix() const;

 private:
  int p_;
  Vector u_;
};

// Natural parameters of N(0, Sigma) as an exponential family:
// theta^ii = -sigma^ii / 2 and theta^ij = -sigma^ij (i < j), where sigma^ij
// are entries of Sigma^{-1}. Stored in the upper triangle of a p x p matrix;
// the strict lower triangle is zero.
class NaturalCoords {
 public:
  explicit NaturalCoords(Matrix upper);

  int dim() const { return static_cast<int>(theta_.rows()); }
  double theta(int i, int j) const;  // any order of i, j
  const Matrix& upper() const { return theta_; }

 private:
  Matrix theta_;
};

Spectrum spectral_decompose(const SpdMatrix& s);
SpdMatrix compose(const Spectrum& sp);

// Matrix exponential of U(u). Closed-form rotation for p = 2, scaling and
// squaring with a truncated Taylor series otherwise.
Matrix exp_skew(const SkewParams& u);

// Gamma exp(U) Lambda exp(U)^T Gamma^T: the covariance at chart coordinates
// (lambda, u) around the frame of `base`.
SpdMatrix sigma_of_coords(const Spectrum& base, const SkewParams& u);

NaturalCoords to_natural(const SpdMatrix& s);
SpdMatrix from_natural(const NaturalCoords& theta);

// tr(S T^{-1}) - log|S T^{-1}| - p. Note: no factor 1/2.
double kl_divergence(const SpdMatrix& s, const SpdMatrix& t);

// Diagonal of G^T S G: the minimiser over lambda~ of
// KL(S, G diag(lambda~) G^T).
Vector kl_project(const SpdMatrix& s, const Matrix& gamma);

// [[cos t, -sin t], [sin t, cos t]].
Matrix rotation2(double theta);

// max_ij |G^T G - I|_ij.
double orthogonality_error(const Matrix& gamma);

}  // namespace eigengeo
