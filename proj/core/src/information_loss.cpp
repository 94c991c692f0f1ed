#include "eigengeo/information_loss.hpp"

#include "eigengeo/fisher_geometry.hpp"

namespace eigengeo {

LossMatrix loss_first_order(const Vector& lambda) {
  check_spectrum(lambda);
  const auto p = lambda.size();
  Matrix b = Matrix::Zero(p, p);
  for (Eigen::Index a = 0; a < p; ++a) {
    double diag = 0.0;
    for (Eigen::Index t = 0; t < p; ++t) {
      if (t == a) continue;
      const double d = lambda(t) - lambda(a);
      diag += lambda(t) * lambda(t) / (d * d);
      if (t > a) {
        b(a, t) = b(t, a) = -1.0 / (2.0 * d * d);
      }
    }
    b(a, a) = diag / (2.0 * lambda(a) * lambda(a));
  }
  return {b};
}

LossExpansion loss_expansion(const Vector& lambda) {
  const SpectralMetric g = metric_spectral(lambda);  // shared degeneracy guard
  const CurvatureTensor h(lambda);
  const int p = g.dim;
  const int pairs = pair_count(p);
  const Vector g_inv_lambda = g.inverse_lambda();
  const Vector g_inv_u = g.inverse_u();

  auto g_inv_uu = [&](int k, int l) { return k == l ? g_inv_u(k) : 0.0; };

  Matrix order_n = Matrix::Zero(p, p);
  Matrix b = Matrix::Zero(p, p);
  for (int a = 0; a < p; ++a) {
    for (int c = 0; c < p; ++c) {
      // n sum g_a(s,t) g_c(u,v) g^{(s,t)(u,v)}
      double cross = 0.0;
      for (int k = 0; k < pairs; ++k) {
        for (int l = 0; l < pairs; ++l) {
          cross += g.cross_component(a, pair_at(p, k)) * g.cross_component(c, pair_at(p, l)) *
                   g_inv_uu(k, l);
        }
      }

      // e-curvature of M: sum H_ad(s,t) H_ce(u,v) g^{de} g^{(s,t)(u,v)}.
      double e_term = 0.0;
      for (int d = 0; d < p; ++d) {
        for (int k = 0; k < pairs; ++k) {
          const PairIndex st = pair_at(p, k);
          e_term += embedding_curvature_M(lambda, a, d, st) * embedding_curvature_M(lambda, c, d, st) *
                    g_inv_lambda(d) * g_inv_u(k);
        }
      }

      // m-curvature of A.
      double m_term = 0.0;
      for (int k1 = 0; k1 < pairs; ++k1) {
        for (int k2 = 0; k2 < pairs; ++k2) {
          const double ha = h(pair_at(p, k1), pair_at(p, k2), a);
          if (ha == 0.0) continue;
          for (int k3 = 0; k3 < pairs; ++k3) {
            const double g13 = g_inv_uu(k1, k3);
            if (g13 == 0.0) continue;
            for (int k4 = 0; k4 < pairs; ++k4) {
              const double g24 = g_inv_uu(k2, k4);
              if (g24 == 0.0) continue;
              m_term += ha * h(pair_at(p, k3), pair_at(p, k4), c) * g13 * g24;
            }
          }
        }
      }
      order_n(a, c) = cross;
      b(a, c) = e_term + 0.5 * m_term;
    }
  }
  return {order_n, {b}};
}

LossMatrix loss_contraction(const Vector& lambda) { return loss_expansion(lambda).order_one; }

CarriedInformation info_carried_by_l(const Vector& lambda, double n) {
  if (!(n >= 1.0)) throw DomainError("info_carried_by_l: n must be at least 1");
  const LossMatrix loss = loss_first_order(lambda);
  CarriedInformation out;
  out.g = (0.5 * n * lambda.array().square().inverse()).matrix().asDiagonal();
  out.g -= loss.b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(out.g, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues()(0);
  out.positive_definite = out.min_eigenvalue > 0.0;
  return out;
}

}  // namespace eigengeo
