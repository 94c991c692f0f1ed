#pragma once

// Monte-Carlo harnesses: Wishart product-sum sampling, KL risk of eigenvalue
// estimators, the majorization check on the bias of sample eigenvalues, and
// the risk experiments over scenario grids.
//
// Replication r of any harness draws from StreamKey{seed, stream, r}, so a
// (seed, config) pair determines every number reported, for any worker
// count. Grid points share the replication streams (common random numbers).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eigengeo/ensemble.hpp"
#include "eigengeo/estimators.hpp"
#include "eigengeo/random.hpp"
#include "eigengeo/spd_manifold.hpp"

namespace eigengeo {

// Draws x ~ N(0, Sigma) as L z with L the lower Cholesky factor of Sigma.
class GaussianSampler {
 public:
  explicit GaussianSampler(const SpdMatrix& sigma);

  int dim() const { return static_cast<int>(factor_.rows()); }
  // Raw sum of n outer products, not validated.
  Matrix product_sum_matrix(int n, Rng& rng) const;
  // The same, wrapped as SpdMatrix (throws NotPositiveDefinite if the draw
  // is numerically singular, which has probability zero for n >= p).
  SpdMatrix product_sum(int n, Rng& rng) const;

 private:
  Matrix factor_;
};

// S = sum_{i=1}^n x_i x_i^T with x_i ~ N(0, Sigma) independent. Needs n >= p.
SpdMatrix sample_product_sum(const SpdMatrix& sigma, int n, Rng& rng);

// KL(diag(estimate), diag(truth)) = sum_i r_i - log r_i - 1, r = estimate / truth.
double kl_loss(const Vector& estimate, const Vector& truth);

// An estimator maps (S, n) to an eigenvalue vector in the order of `truth`.
using Estimator = std::function<Vector(const SpdMatrix& s, int n)>;

struct NamedEstimator {
  std::string tag;
  Estimator fn;
};

struct RiskSummary {
  std::string tag;
  double mean = 0.0;
  double std_error = 0.0;
  int reps = 0;
  // Paired difference loss(first estimator) - loss(this), same draws.
  double diff_mean = 0.0;
  double diff_std_error = 0.0;
};

struct RiskResult {
  std::vector<RiskSummary> estimators;
  int failures = 0;  // replications where some estimator threw; excluded from all means
};

// Evaluates every estimator on the same draws. The loss is measured against
// the descending eigenvalues of sigma, i.e. Sigma-hat = diag(estimate)
// versus diag(lambda).
RiskResult kl_risks(const std::vector<NamedEstimator>& estimators, const SpdMatrix& sigma, int n,
                    int reps, std::uint64_t seed, std::uint64_t stream = streams::kRisk);

// Single-estimator convenience form: (mean, standard error).
RiskSummary kl_risk(const Estimator& estimator, const SpdMatrix& sigma, int n, int reps,
                    std::uint64_t seed, std::uint64_t stream = streams::kRisk);

struct MajorizationReport {
  Vector lambda;                 // true eigenvalues, descending
  Vector mean_lbar;              // E[lbar_i] estimates
  Vector stderr_lbar;
  Vector partial_sum_mean;       // sum_{i<=j} E[lbar_i], j = 1..p
  Vector partial_sum_stderr;
  Vector partial_sum_truth;      // sum_{i<=j} lambda_i
  std::vector<bool> dominates;   // j < p: mean - truth > 3 stderr
  double max_trace_error = 0.0;  // max over draws |sum lbar - tr S_bar| / tr S_bar
  int reps = 0;

  bool holds() const;
};

MajorizationReport bias_majorization_check(const SpdMatrix& sigma, int n, int reps,
                                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Scenario experiments

struct ExperimentConfig {
  int p = 2;
  int n = 10;
  int reps = 10000;
  std::uint64_t seed = 1;
  std::vector<double> grid;  // c values or angles, per experiment
  EnsembleSpec ensemble{EnsembleKind::kEquidistantO2, 50};
  double lambda2 = 0.8;      // second eigenvalue for the rotated-frame experiment
};

struct ScenarioRow {
  double grid_value = 0.0;
  Vector lambda;  // true eigenvalues at this grid point
  RiskResult risks;
};

struct RiskReport {
  std::string experiment;
  std::string grid_name;
  std::vector<std::string> estimators;
  std::vector<ScenarioRow> rows;
};

// Grid c = 1.00, 0.98, ..., 0.02; Sigma = diag(1, c); lbar vs lambda_hat(Gamma = I).
ExperimentConfig figure4_config(int reps, std::uint64_t seed);
RiskReport figure4_experiment(const ExperimentConfig& cfg);

// lambda = (1, lambda2), Sigma = R(theta) diag(lambda) R(theta)^T for
// theta = j pi / 100, j = 0..50; lbar vs lambda_hat(Gamma = I).
ExperimentConfig figure5_config(int reps, std::uint64_t seed);
RiskReport figure5_experiment(const ExperimentConfig& cfg);

// Grid c = 0.04, 0.08, ..., 1.00; Sigma = diag(1, c); lbar vs lambda_star.
ExperimentConfig figure6_config(int reps, std::uint64_t seed);
RiskReport figure6_experiment(const ExperimentConfig& cfg);

// First grid angle at which lambda_hat's risk exceeds lbar's, if any.
std::optional<double> figure5_crossover(const RiskReport& report);

}  // namespace eigengeo
