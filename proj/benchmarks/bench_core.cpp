#include <benchmark/benchmark.h>

#include "eigengeo/estimators.hpp"
#include "eigengeo/fisher_geometry.hpp"
#include "eigengeo/hypothesis_tests.hpp"
#include "eigengeo/information_loss.hpp"
#include "eigengeo/wishart_sim.hpp"

namespace {

using namespace eigengeo;

Vector descending(int p) { return Vector::LinSpaced(p, 2.0, 0.5); }

void BM_ExpSkew(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Vector u = Vector::LinSpaced(pair_count(p), -0.3, 0.4);
  const SkewParams params(p, u);
  for (auto _ : state) benchmark::DoNotOptimize(exp_skew(params));
}
BENCHMARK(BM_ExpSkew)->Arg(2)->Arg(4)->Arg(8);

void BM_LossFirstOrder(benchmark::State& state) {
  const Vector l = descending(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(loss_first_order(l));
}
BENCHMARK(BM_LossFirstOrder)->Arg(4)->Arg(16);

void BM_CurvatureOracleA(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Spectrum sp(descending(p), Matrix::Identity(p, p));
  for (auto _ : state) benchmark::DoNotOptimize(curvature_oracle_A(sp, {0, 1}, {0, 1}, 0));
}
BENCHMARK(BM_CurvatureOracleA)->Arg(2)->Arg(4);

void BM_SampleProductSum(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const GaussianSampler sampler(SpdMatrix::diagonal(descending(p)));
  Rng rng = make_rng({1, 2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(sampler.product_sum_matrix(10, rng));
}
BENCHMARK(BM_SampleProductSum)->Arg(2)->Arg(5);

void BM_LambdaStar(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const OrthogonalEnsemble e = o2_equidistant(k);
  Vector lb(2);
  lb << 1.3, 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(lambda_star_from_eigenvalues(lb, 10, e));
  state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_LambdaStar)->Arg(50)->Arg(100);

void BM_LambdaStarHaar(benchmark::State& state) {
  const OrthogonalEnsemble e = haar_sample(3, static_cast<int>(state.range(0)), 1);
  Vector lb(3);
  lb << 1.3, 1.0, 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(lambda_star_from_eigenvalues(lb, 10, e));
}
BENCHMARK(BM_LambdaStarHaar)->Arg(4096);

void BM_EigenLrtStat(benchmark::State& state) {
  const OrthogonalEnsemble e = o2_equidistant(100);
  // Mixed draws from H0 and a scale alternative.
  std::vector<Vector> ls;
  for (std::uint64_t r = 0; r < 64; ++r) {
    Rng rng = make_rng({1, 7, r});
    const SpdMatrix sigma = SpdMatrix::diagonal(r % 2 ? Vector::Constant(2, 1.0) : Vector::Constant(2, 0.5));
    const Spectrum s = spectral_decompose(sample_product_sum(sigma, 10, rng));
    ls.push_back(s.lambda());
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eigen_lrt_stat(ls[i++ % ls.size()], 10, e));
}
BENCHMARK(BM_EigenLrtStat);

void BM_KlRisk(benchmark::State& state) {
  const SpdMatrix sigma = SpdMatrix::diagonal(descending(2));
  const Estimator est = [](const SpdMatrix& s, int n) { return lbar(s, n).lambda_hat; };
  for (auto _ : state) benchmark::DoNotOptimize(kl_risk(est, sigma, 10, 1000, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_KlRisk)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
