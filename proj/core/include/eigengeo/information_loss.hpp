#pragma once

// Asymptotic information lost by reducing the sample covariance to its
// eigenvalues l. The loss matrix Delta g_ab(l) = B_ab + O(1/n); l is first
// order sufficient but not second order sufficient, so B is the leading term.

#include "eigengeo/spd_manifold.hpp"

namespace eigengeo {

// O(1) term B of the information loss, in information per observation.
// Symmetric, non-negative diagonal, non-positive off-diagonal.
struct LossMatrix {
  Matrix b;

  int dim() const { return static_cast<int>(b.rows()); }
  double operator()(int a, int c) const { return b(a, c); }
};

// Closed form:
//   B_aa = (1 / (2 lambda_a^2)) sum_{t != a} lambda_t^2 / (lambda_t - lambda_a)^2
//   B_ab = -1 / (2 (lambda_a - lambda_b)^2),  a != b.
LossMatrix loss_first_order(const Vector& lambda);

// The same O(1) term assembled from the metric and embedding curvatures of
// the spectral chart: the order-n term (through g_a(s,t)) and the
// e-curvature term of M are evaluated and vanish, leaving
//   (1/2) sum H_(s,t)(u,v)a H_(o,q)(r,w)b g^{(s,t)(o,q)} g^{(u,v)(r,w)}
// summed over all pair tuples. Independent route to loss_first_order.
LossMatrix loss_contraction(const Vector& lambda);

// Both orders of the generic contraction: the coefficient of n (zero because
// the metric is block diagonal) and the O(1) matrix returned above.
struct LossExpansion {
  Matrix order_n;
  LossMatrix order_one;
};

LossExpansion loss_expansion(const Vector& lambda);

// First-order approximation of the Fisher information carried by l for n
// observations: (n/2) diag(lambda^-2) - B. The O(1/n) remainder is not
// modelled. When eigenvalues are close the expansion breaks down and the
// result can fail to be positive definite; that is reported, not clamped.
struct CarriedInformation {
  Matrix g;
  bool positive_definite = true;
  double min_eigenvalue = 0.0;
};

CarriedInformation info_carried_by_l(const Vector& lambda, double n);

}  // namespace eigengeo
