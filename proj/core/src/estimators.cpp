#include "eigengeo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace eigengeo {

std::string to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::kLbar:
      return "lbar";
    case EstimatorMethod::kGammaFrame:
      return "gamma-frame";
    case EstimatorMethod::kStar:
      return "star";
  }
  return "unknown";
}

namespace {

void check_count(int n, int p, const char* who) {
  if (n < p) {
    throw DomainError(std::string(who) + ": need n >= p, got n=" + std::to_string(n) +
                      " p=" + std::to_string(p));
  }
}

Vector sample_eigenvalues(const SpdMatrix& s, int n) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse() / static_cast<double>(n);
}

}  // namespace

EigenEstimate lbar(const SpdMatrix& s, int n) {
  check_count(n, s.dim(), "lbar");
  return {sample_eigenvalues(s, n), EstimatorMethod::kLbar, 0};
}

EigenEstimate lambda_hat(const SpdMatrix& s, int n, const Matrix& gamma) {
  if (n < 1) throw DomainError("lambda_hat: n must be positive");
  if (gamma.rows() != s.dim() || gamma.cols() != s.dim()) {
    throw DimensionMismatch("lambda_hat: frame is " + std::to_string(gamma.rows()) + "x" +
                            std::to_string(gamma.cols()) + ", matrix is p=" +
                            std::to_string(s.dim()));
  }
  const Vector d = (gamma.transpose() * s.matrix() * gamma).diagonal() / static_cast<double>(n);
  return {d, EstimatorMethod::kGammaFrame, 0};
}

Vector lambda_star_from_eigenvalues(const Vector& lbar, int n, const OrthogonalEnsemble& ensemble) {
  const auto p = lbar.size();
  if (ensemble.dim != p) {
    throw DimensionMismatch("lambda_star: ensemble dimension " + std::to_string(ensemble.dim) +
                            " differs from p=" + std::to_string(p));
  }
  if (ensemble.size() == 0) throw DomainError("lambda_star: empty ensemble");

  const std::size_t m = ensemble.size();
  std::vector<double> log_w(m);
  std::vector<Vector> diagonals(m);
  double max_log_w = -std::numeric_limits<double>::infinity();
  const Vector ratio_inv = lbar.cwiseInverse();
  for (std::size_t k = 0; k < m; ++k) {
    const Matrix sq = ensemble.matrices[k].cwiseAbs2();  // sq(j, i) = G_ji^2
    // (G^T Lbar G)_ii = sum_j G_ji^2 lbar_j
    diagonals[k] = sq.transpose() * lbar;
    // tr(L G^T L^-1 G) = sum_i l_i sum_j G_ji^2 / l_j; l / l ratios equal lbar ratios.
    const double trace = lbar.dot(sq.transpose() * ratio_inv);
    log_w[k] = std::log(ensemble.weights[k]) - 0.5 * n * trace;
    if (log_w[k] > max_log_w) max_log_w = log_w[k];
  }
  if (!std::isfinite(max_log_w)) {
    throw QuadratureUnderflow("lambda_star: no finite quadrature log-weight");
  }

  double total = 0.0;
  Vector acc = Vector::Zero(p);
  for (std::size_t k = 0; k < m; ++k) {
    const double w = std::exp(log_w[k] - max_log_w);
    total += w;
    acc += w * diagonals[k];
  }
  if (!(total > 0.0)) throw QuadratureUnderflow("lambda_star: quadrature weights vanished");
  return acc / total;
}

EigenEstimate lambda_star(const SpdMatrix& s, int n, const OrthogonalEnsemble& ensemble) {
  check_count(n, s.dim(), "lambda_star");
  const Vector l = sample_eigenvalues(s, n);
  check_spectrum(l);
  Vector est = lambda_star_from_eigenvalues(l, n, ensemble);
  // Already descending in practice; sorting makes the reported order a contract.
  std::sort(est.begin(), est.end(), std::greater<>());
  return {est, EstimatorMethod::kStar, ensemble.size()};
}

}  // namespace eigengeo
