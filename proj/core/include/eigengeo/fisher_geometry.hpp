#pragma once

// Fisher information metric and embedding curvatures of N(0, Sigma) in
// spectral coordinates (lambda, u), together with finite-difference oracles
// that recompute the same quantities from sigma_of_coords alone.
//
// Conventions: d_a = d/d lambda_a, d_(s,t) = d/d u_st at u = 0. M(Gamma) is
// the fixed-eigenvector submanifold (coordinates lambda), A(lambda) the
// fixed-eigenvalue submanifold (coordinates u).

#include <vector>

#include "eigengeo/spd_manifold.hpp"

namespace eigengeo {

// A tangent vector at a point of the manifold, represented as a symmetric
// matrix in the sigma-coordinate basis.
class SymTangent {
 public:
  // Throws DomainError if m is not symmetric to 1e-12 relative; stores the
  // exactly symmetrised matrix.
  explicit SymTangent(const Matrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// (1/2) tr(S^{-1} A S^{-1} B).
double metric_sigma(const SpdMatrix& s, const SymTangent& a, const SymTangent& b);

// d Sigma / d lambda_a = gamma_a gamma_a^T.
SymTangent tangent_lambda(const Spectrum& sp, int a);

// d Sigma / d u_st at u = 0 = (lambda_t - lambda_s)(gamma_s gamma_t^T + gamma_t gamma_s^T).
SymTangent tangent_u(const Spectrum& sp, PairIndex st);

// The same expression evaluated on raw inputs with no validation of the
// spectrum (used to inspect the formula at degenerate eigenvalues).
Matrix tangent_u_formula(const Vector& lambda, const Matrix& gamma, PairIndex st);

// Diagonal metric in spectral coordinates. The lambda-u cross block is zero.
struct SpectralMetric {
  int dim = 0;
  Vector g_lambda;  // g_aa = 1 / (2 lambda_a^2)
  Vector g_u;       // g_(s,t)(s,t) = (lambda_s - lambda_t)^2 / (lambda_s lambda_t), pair_offset order

  double lambda_component(int a, int b) const { return a == b ? g_lambda(a) : 0.0; }
  double u_component(PairIndex st, PairIndex uv) const;
  double cross_component(int, PairIndex) const { return 0.0; }

  // Inverse metric, diagonal: g^aa = 2 lambda_a^2, g^(s,t)(s,t) = 1 / g_(s,t)(s,t).
  Vector inverse_lambda() const { return g_lambda.cwiseInverse(); }
  Vector inverse_u() const { return g_u.cwiseInverse(); }
};

SpectralMetric metric_spectral(const Vector& lambda);

// m-embedding curvature of A(lambda), H_(s,t)(u,v)a:
//   lambda_a^-2 (lambda_t - lambda_a)  if s = u = a and t = v,
//   lambda_a^-2 (lambda_s - lambda_a)  if s = u and t = v = a,
//   0 otherwise.
double embedding_curvature_A(const Vector& lambda, PairIndex st, PairIndex uv, int a);

// e- and m-embedding curvature of M(Gamma), H_ab(s,t). Identically zero:
// M(Gamma) is flat under both connections.
double embedding_curvature_M(const Vector& lambda, int a, int b, PairIndex st);

// Sparse container of H_(s,t)(u,v)a. Only slabs with (s,t) = (u,v) are
// stored; every other query returns 0.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(const Vector& lambda);

  int dim() const { return dim_; }
  double operator()(PairIndex st, PairIndex uv, int a) const;
  // Length-p vector over a for the diagonal pair (st, st).
  const Vector& slab(PairIndex st) const { return slabs_[pair_offset(dim_, st)]; }

 private:
  int dim_;
  std::vector<Vector> slabs_;
};

// Component a of sum_b H_(s,t)(u,v)b g^{ba}. For (s,t) = (u,v) this is
// 2(lambda_t - lambda_s) at a = s and 2(lambda_s - lambda_t) at a = t.
Vector raised_curvature(const Vector& lambda, PairIndex st, PairIndex uv);

// Efron's statistical curvature of A(lambda):
// 2 sum_{a<b} (lambda_a^2 + lambda_b^2) / (lambda_a - lambda_b)^2.
double statistical_curvature(const Vector& lambda);

// ---------------------------------------------------------------------------
// Finite-difference oracles. These only call compose-style products of
// (lambda, Gamma exp U) and never the closed forms above.

struct FdSteps {
  double first = 1e-5;
  double second = 1e-4;

  // First-derivative step 1e-5 * max(1, lambda_1); second-derivative step
  // for the angle-like u coordinates, see fisher_geometry.cpp.
  static FdSteps for_spectrum(const Vector& lambda);
};

// Central difference of sigma_of_coords in lambda_a (u = 0).
SymTangent tangent_lambda_fd(const Spectrum& sp, int a, double h);
// Central difference of sigma_of_coords in u_st at u = 0.
SymTangent tangent_u_fd(const Spectrum& sp, PairIndex st, double h);

// -(1/2) tr(A B) with A = d^2 Sigma / d u_st d u_uv at u = 0 (central second
// differences, 4-point stencil for mixed pairs) and B = d Sigma^{-1} / d lambda_a
// (central difference).
double curvature_oracle_A(const Spectrum& base, PairIndex st, PairIndex uv, int a, double h);
double curvature_oracle_A(const Spectrum& base, PairIndex st, PairIndex uv, int a);

enum class Connection { kExponential, kMixture };

// Embedding curvature of M(Gamma) recomputed by finite differences:
// e: -(1/2) tr(d^2 Sigma^{-1}/d lambda_a d lambda_b * d Sigma/d u_st),
// m: -(1/2) tr(d^2 Sigma/d lambda_a d lambda_b * d Sigma^{-1}/d u_st).
double curvature_oracle_M(const Spectrum& base, Connection kind, int a, int b, PairIndex st,
                          double h_first, double h_second);

}  // namespace eigengeo
