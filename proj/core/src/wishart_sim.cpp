#include "eigengeo/wishart_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "eigengeo/parallel.hpp"

namespace eigengeo {

GaussianSampler::GaussianSampler(const SpdMatrix& sigma) {
  Eigen::LLT<Matrix> llt(sigma.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("GaussianSampler: Cholesky factorization failed");
  }
  factor_ = llt.matrixL();
}

Matrix GaussianSampler::product_sum_matrix(int n, Rng& rng) const {
  const int p = dim();
  std::normal_distribution<double> normal;
  Matrix z(p, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < p; ++i) z(i, j) = normal(rng);
  }
  const Matrix x = factor_.triangularView<Eigen::Lower>() * z;
  Matrix s = Matrix::Zero(p, p);
  s.selfadjointView<Eigen::Lower>().rankUpdate(x);
  return s.selfadjointView<Eigen::Lower>();
}

SpdMatrix GaussianSampler::product_sum(int n, Rng& rng) const {
  return SpdMatrix(product_sum_matrix(n, rng));
}

SpdMatrix sample_product_sum(const SpdMatrix& sigma, int n, Rng& rng) {
  if (n < sigma.dim()) {
    throw DomainError("sample_product_sum: need n >= p, got n=" + std::to_string(n) +
                      " p=" + std::to_string(sigma.dim()));
  }
  return GaussianSampler(sigma).product_sum(n, rng);
}

double kl_loss(const Vector& estimate, const Vector& truth) {
  if (estimate.size() != truth.size()) {
    throw DimensionMismatch("kl_loss: estimate has " + std::to_string(estimate.size()) +
                            " entries, truth has " + std::to_string(truth.size()));
  }
  double loss = 0.0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (!(estimate(i) > 0.0) || !(truth(i) > 0.0)) {
      throw DomainError("kl_loss: entries must be positive");
    }
    const double r = estimate(i) / truth(i);
    loss += r - std::log(r) - 1.0;
  }
  return loss;
}

namespace {

Vector descending_eigenvalues(const SpdMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Two-pass mean and standard error in index order.
MeanSe summarize(const std::vector<double>& x) {
  MeanSe out;
  const std::size_t m = x.size();
  if (m == 0) return out;
  double sum = 0.0;
  for (double v : x) sum += v;
  out.mean = sum / static_cast<double>(m);
  if (m < 2) return out;
  double ss = 0.0;
  for (double v : x) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m));
  return out;
}

void check_harness_args(int p, int n, int reps) {
  if (n < p) throw DomainError("need n >= p, got n=" + std::to_string(n) + " p=" + std::to_string(p));
  if (reps < 1) throw DomainError("reps must be positive");
}

}  // namespace

RiskResult kl_risks(const std::vector<NamedEstimator>& estimators, const SpdMatrix& sigma, int n,
                    int reps, std::uint64_t seed, std::uint64_t stream) {
  check_harness_args(sigma.dim(), n, reps);
  if (estimators.empty()) throw DomainError("kl_risks: no estimators");
  const Vector truth = descending_eigenvalues(sigma);
  const GaussianSampler sampler(sigma);
  const std::size_t m = estimators.size();

  // losses[r * m + e]; NaN marks a failed replication.
  std::vector<double> losses(static_cast<std::size_t>(reps) * m);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
    Rng rng = make_rng({seed, stream, r});
    double* row = losses.data() + r * m;
    try {
      const SpdMatrix s = sampler.product_sum(n, rng);
      for (std::size_t e = 0; e < m; ++e) row[e] = kl_loss(estimators[e].fn(s, n), truth);
    } catch (const std::exception&) {
      for (std::size_t e = 0; e < m; ++e) row[e] = std::numeric_limits<double>::quiet_NaN();
    }
  });

  RiskResult result;
  std::vector<std::vector<double>> kept(m), diffs(m);
  for (std::size_t r = 0; r < static_cast<std::size_t>(reps); ++r) {
    const double* row = losses.data() + r * m;
    if (std::isnan(row[0])) {
      ++result.failures;
      continue;
    }
    for (std::size_t e = 0; e < m; ++e) {
      kept[e].push_back(row[e]);
      diffs[e].push_back(row[0] - row[e]);
    }
  }
  for (std::size_t e = 0; e < m; ++e) {
    RiskSummary sum;
    sum.tag = estimators[e].tag;
    const MeanSe a = summarize(kept[e]);
    const MeanSe d = summarize(diffs[e]);
    sum.mean = a.mean;
    sum.std_error = a.se;
    sum.reps = static_cast<int>(kept[e].size());
    sum.diff_mean = d.mean;
    sum.diff_std_error = d.se;
    result.estimators.push_back(sum);
  }
  return result;
}

RiskSummary kl_risk(const Estimator& estimator, const SpdMatrix& sigma, int n, int reps,
                    std::uint64_t seed, std::uint64_t stream) {
  RiskResult r = kl_risks({{"estimator", estimator}}, sigma, n, reps, seed, stream);
  if (r.failures > 0) {
    throw NumericError("kl_risk: " + std::to_string(r.failures) + " of " + std::to_string(reps) +
                       " replications failed");
  }
  return r.estimators.front();
}

bool MajorizationReport::holds() const {
  for (bool d : dominates) {
    if (!d) return false;
  }
  return max_trace_error < 1e-12;
}

MajorizationReport bias_majorization_check(const SpdMatrix& sigma, int n, int reps,
                                           std::uint64_t seed) {
  const int p = sigma.dim();
  check_harness_args(p, n, reps);
  const GaussianSampler sampler(sigma);

  // Per draw: p sample eigenvalues (descending) and the relative trace error.
  std::vector<double> eig(static_cast<std::size_t>(reps) * p);
  std::vector<double> trace_err(reps);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
    Rng rng = make_rng({seed, streams::kBias, r});
    const Matrix s = sampler.product_sum_matrix(n, rng) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
    const Vector l = es.eigenvalues().reverse();
    for (int i = 0; i < p; ++i) eig[r * p + i] = l(i);
    trace_err[r] = std::abs(l.sum() - s.trace()) / s.trace();
  });

  MajorizationReport rep;
  rep.lambda = descending_eigenvalues(sigma);
  rep.reps = reps;
  rep.mean_lbar.resize(p);
  rep.stderr_lbar.resize(p);
  rep.partial_sum_mean.resize(p);
  rep.partial_sum_stderr.resize(p);
  rep.partial_sum_truth.resize(p);
  std::vector<double> comp(reps), partial(reps, 0.0);
  double truth = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int r = 0; r < reps; ++r) {
      comp[r] = eig[static_cast<std::size_t>(r) * p + i];
      partial[r] += comp[r];
    }
    const MeanSe c = summarize(comp);
    const MeanSe ps = summarize(partial);
    truth += rep.lambda(i);
    rep.mean_lbar(i) = c.mean;
    rep.stderr_lbar(i) = c.se;
    rep.partial_sum_mean(i) = ps.mean;
    rep.partial_sum_stderr(i) = ps.se;
    rep.partial_sum_truth(i) = truth;
    if (i + 1 < p) rep.dominates.push_back(ps.mean - truth > 3.0 * ps.se);
  }
  for (double e : trace_err) rep.max_trace_error = std::max(rep.max_trace_error, e);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

void check_config(const ExperimentConfig& cfg, int expected_p) {
  if (cfg.p != expected_p) {
    throw DomainError("experiment is defined for p=" + std::to_string(expected_p) + ", got p=" +
                      std::to_string(cfg.p));
  }
  check_harness_args(cfg.p, cfg.n, cfg.reps);
  if (cfg.grid.empty()) throw DomainError("experiment grid is empty");
}

NamedEstimator lbar_estimator() {
  return {"lbar", [](const SpdMatrix& s, int n) { return lbar(s, n).lambda_hat; }};
}

NamedEstimator identity_frame_estimator() {
  return {"lambda_hat", [](const SpdMatrix& s, int n) {
            return lambda_hat(s, n, Matrix::Identity(s.dim(), s.dim())).lambda_hat;
          }};
}

// Sigma = diag(1, c) over the grid; every grid point reuses the same draws.
RiskReport diagonal_scan(const ExperimentConfig& cfg, std::string name, std::uint64_t stream,
                         const std::vector<NamedEstimator>& ests) {
  RiskReport report;
  report.experiment = std::move(name);
  report.grid_name = "c";
  for (const auto& e : ests) report.estimators.push_back(e.tag);
  for (double c : cfg.grid) {
    if (!(c > 0.0)) throw DomainError("grid value c must be positive");
    Vector lambda(2);
    lambda << 1.0, c;
    ScenarioRow row;
    row.grid_value = c;
    row.lambda = lambda;
    row.risks = kl_risks(ests, SpdMatrix::diagonal(lambda), cfg.n, cfg.reps, cfg.seed, stream);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

ExperimentConfig figure4_config(int reps, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.reps = reps;
  cfg.seed = seed;
  for (int j = 0; j < 50; ++j) cfg.grid.push_back(1.0 - 0.02 * j);
  return cfg;
}

RiskReport figure4_experiment(const ExperimentConfig& cfg) {
  check_config(cfg, 2);
  return diagonal_scan(cfg, "fig4", streams::kFigure4, {lbar_estimator(), identity_frame_estimator()});
}

ExperimentConfig figure5_config(int reps, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.reps = reps;
  cfg.seed = seed;
  for (int j = 0; j <= 50; ++j) cfg.grid.push_back(j * std::numbers::pi / 100.0);
  return cfg;
}

RiskReport figure5_experiment(const ExperimentConfig& cfg) {
  check_config(cfg, 2);
  if (!(cfg.lambda2 > 0.0 && cfg.lambda2 < 1.0)) {
    throw DomainError("second eigenvalue must lie in (0, 1)");
  }
  const std::vector<NamedEstimator> ests{lbar_estimator(), identity_frame_estimator()};
  RiskReport report;
  report.experiment = "fig5";
  report.grid_name = "theta";
  for (const auto& e : ests) report.estimators.push_back(e.tag);
  Vector lambda(2);
  lambda << 1.0, cfg.lambda2;
  for (double theta : cfg.grid) {
    const Matrix g = rotation2(theta);
    const SpdMatrix sigma(g * lambda.asDiagonal() * g.transpose());
    ScenarioRow row;
    row.grid_value = theta;
    row.lambda = lambda;
    row.risks = kl_risks(ests, sigma, cfg.n, cfg.reps, cfg.seed, streams::kFigure5);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ExperimentConfig figure6_config(int reps, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.reps = reps;
  cfg.seed = seed;
  for (int j = 1; j <= 25; ++j) cfg.grid.push_back(0.04 * j);
  return cfg;
}

RiskReport figure6_experiment(const ExperimentConfig& cfg) {
  check_config(cfg, 2);
  auto ens = std::make_shared<const OrthogonalEnsemble>(make_ensemble(cfg.ensemble, 2, cfg.seed));
  NamedEstimator star{"lambda_star", [ens](const SpdMatrix& s, int n) {
                        return lambda_star(s, n, *ens).lambda_hat;
                      }};
  return diagonal_scan(cfg, "fig6", streams::kFigure6, {lbar_estimator(), star});
}

std::optional<double> figure5_crossover(const RiskReport& report) {
  for (const auto& row : report.rows) {
    const auto& e = row.risks.estimators;
    if (e.size() >= 2 && e[1].mean > e[0].mean) return row.grid_value;
  }
  return std::nullopt;
}

}  // namespace eigengeo
