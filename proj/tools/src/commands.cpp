#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "eigengeo/ensemble.hpp"
#include "eigengeo/estimators.hpp"
#include "eigengeo/fisher_geometry.hpp"
#include "eigengeo/hypothesis_tests.hpp"
#include "eigengeo/information_loss.hpp"
#include "eigengeo/parallel.hpp"
#include "eigengeo/wishart_sim.hpp"

namespace eigengeo::cli {

using nlohmann::json;

namespace {

Vector to_vector(const std::vector<double>& xs) {
  if (xs.empty()) throw DomainError("--lambda needs at least one value");
  return Eigen::Map<const Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

std::string iso_utc(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Combined absolute/relative deviation used by every oracle column.
double deviation(double value, double oracle) {
  return std::abs(value - oracle) / std::max(1.0, std::abs(value));
}

std::string pair_label(PairIndex st) {
  return "(" + std::to_string(st.s + 1) + "," + std::to_string(st.t + 1) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------

RunContext::RunContext(std::string command, std::vector<std::string> argv, const std::string& out_dir,
                       bool plot, std::ostream& out, std::ostream& err)
    : command_(std::move(command)),
      argv_(std::move(argv)),
      out_dir_(ensure_output_dir(out_dir)),
      plot_(plot),
      out_(out),
      err_(err),
      start_(std::chrono::steady_clock::now()),
      started_at_(std::chrono::system_clock::now()) {}

void RunContext::write(const std::string& name, const std::string& contents) {
  const std::filesystem::path path = out_dir_ / name;
  write_atomic(path, contents);
  outputs_.push_back(path.string());
}

void RunContext::finish() {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  json m;
  m["command"] = command_;
  m["argv"] = argv_;
  m["config"] = config_;
  m["seed"] = seed_ ? json(*seed_) : json(nullptr);
  m["version"] = EIGENGEO_VERSION_STRING;
  m["csv_schema"] = kCsvSchemaVersion;
  m["started_at"] = iso_utc(started_at_);
  m["wall_clock_seconds"] = wall;
  m["threads"] = worker_count();
  m["outputs"] = outputs_;
  m["summary"] = summary_;
  const std::filesystem::path path = out_dir_ / "manifest.json";
  write_atomic(path, m.dump(2) + "\n");
  out_ << "wrote";
  for (const auto& o : outputs_) out_ << " " << o;
  out_ << " " << path.string() << "\n";
}

// ---------------------------------------------------------------------------
// geometry

namespace {

// Finite-difference reconstruction of the metric and the A-curvature from
// sigma_of_coords alone, at the frame Gamma = I.
struct FdGeometry {
  Matrix gram;      // full (p + p(p-1)/2)^2 Gram matrix, lambda block first
  Matrix inverse;
  std::vector<double> h;  // H_(s,t)(u,v)a by (offset(st) * np + offset(uv)) * p + a

  FdGeometry(const Spectrum& sp, const FdSteps& steps) {
    const int p = sp.dim();
    const int np = pair_count(p);
    const int d = p + np;
    const SpdMatrix sigma = compose(sp);
    std::vector<SymTangent> basis;
    for (int a = 0; a < p; ++a) basis.push_back(tangent_lambda_fd(sp, a, steps.first));
    for (int k = 0; k < np; ++k) basis.push_back(tangent_u_fd(sp, pair_at(p, k), steps.first));
    gram.resize(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) gram(i, j) = metric_sigma(sigma, basis[i], basis[j]);
    inverse = gram.inverse();
    h.resize(static_cast<std::size_t>(np) * np * p);
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < np; ++j)
        for (int a = 0; a < p; ++a) h[(i * np + j) * p + a] = curvature_oracle_A(sp, pair_at(p, i), pair_at(p, j), a);
  }

  double curvature(int np, int p, int i, int j, int a) const { return h[(i * np + j) * p + a]; }
};

}  // namespace

void cmd_geometry(const GeometryOptions& opt, RunContext& ctx) {
  const Vector l = to_vector(opt.lambda);
  check_spectrum(l);
  const int p = static_cast<int>(l.size());
  const int np = pair_count(p);
  ctx.config() = {{"lambda", opt.lambda}, {"check_fd", opt.check_fd}};

  const Spectrum sp(l, Matrix::Identity(p, p));
  const SpectralMetric metric = metric_spectral(l);
  const FdSteps steps = FdSteps::for_spectrum(l);
  std::optional<FdGeometry> fd;
  if (opt.check_fd) {
    fd.emplace(sp, steps);
    ctx.config()["fd_first_step"] = steps.first;
    ctx.config()["fd_second_step"] = steps.second;
  }

  std::vector<std::string> header = {"quantity", "a", "b", "s", "t", "u", "v", "value"};
  if (fd) {
    header.push_back("oracle");
    header.push_back("deviation");
  }
  CsvTable table(header);
  double max_dev = 0.0;
  auto finish_row = [&](CsvRow& row, double value, double oracle) {
    row.num(value);
    if (fd) {
      const double dev = deviation(value, oracle);
      max_dev = std::max(max_dev, dev);
      row.num(oracle).num(dev);
    }
    table.add(row);
  };
  auto idx = [](CsvRow& row, int x) -> CsvRow& { return row.integer(x + 1); };

  for (int a = 0; a < p; ++a) {
    CsvRow row;
    row.text("metric_lambda");
    idx(row, a);
    idx(row, a).blank().blank().blank().blank();
    finish_row(row, metric.g_lambda(a), fd ? fd->gram(a, a) : 0.0);
  }
  for (int k = 0; k < np; ++k) {
    const PairIndex st = pair_at(p, k);
    CsvRow row;
    row.text("metric_u").blank().blank();
    idx(idx(idx(idx(row, st.s), st.t), st.s), st.t);
    finish_row(row, metric.g_u(k), fd ? fd->gram(p + k, p + k) : 0.0);
  }
  for (int a = 0; a < p; ++a) {
    for (int k = 0; k < np; ++k) {
      const PairIndex st = pair_at(p, k);
      CsvRow row;
      row.text("metric_cross");
      idx(row, a).blank();
      idx(idx(row, st.s), st.t).blank().blank();
      finish_row(row, metric.cross_component(a, st), fd ? fd->gram(a, p + k) : 0.0);
    }
  }
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < np; ++j) {
      const PairIndex st = pair_at(p, i), uv = pair_at(p, j);
      for (int a = 0; a < p; ++a) {
        CsvRow row;
        row.text("curvature_A");
        idx(row, a).blank();
        idx(idx(idx(idx(row, st.s), st.t), uv.s), uv.t);
        finish_row(row, embedding_curvature_A(l, st, uv, a), fd ? fd->curvature(np, p, i, j, a) : 0.0);
      }
    }
  }
  for (int k = 0; k < np; ++k) {
    const PairIndex st = pair_at(p, k);
    const Vector raised = raised_curvature(l, st, st);
    for (int a = 0; a < p; ++a) {
      double oracle = 0.0;
      if (fd) {
        for (int b = 0; b < p; ++b) oracle += fd->curvature(np, p, k, k, b) * fd->inverse(b, a);
      }
      CsvRow row;
      row.text("raised_curvature_A");
      idx(row, a).blank();
      idx(idx(idx(idx(row, st.s), st.t), st.s), st.t);
      finish_row(row, raised(a), oracle);
    }
  }
  if (fd) {
    for (Connection kind : {Connection::kExponential, Connection::kMixture}) {
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
          for (int k = 0; k < np; ++k) {
            const PairIndex st = pair_at(p, k);
            CsvRow row;
            row.text(kind == Connection::kExponential ? "curvature_M_e" : "curvature_M_m");
            idx(idx(row, a), b);
            idx(idx(row, st.s), st.t).blank().blank();
            finish_row(row, embedding_curvature_M(l, a, b, st),
                       curvature_oracle_M(sp, kind, a, b, st, steps.first, steps.second));
          }
    }
  }
  const double gamma = statistical_curvature(l);
  {
    double oracle = 0.0;
    if (fd) {
      for (int i1 = 0; i1 < np; ++i1)
        for (int i2 = 0; i2 < np; ++i2)
          for (int i3 = 0; i3 < np; ++i3)
            for (int i4 = 0; i4 < np; ++i4)
              for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                  oracle += fd->curvature(np, p, i1, i2, a) * fd->curvature(np, p, i3, i4, b) *
                            fd->inverse(p + i1, p + i3) * fd->inverse(p + i2, p + i4) * fd->inverse(a, b);
    }
    CsvRow row;
    row.text("statistical_curvature").blank().blank().blank().blank().blank().blank();
    finish_row(row, gamma, oracle);
  }
  if (fd) {
    CsvRow row;
    row.text("max_deviation").blank().blank().blank().blank().blank().blank().num(max_dev).blank().blank();
    table.add(row);
    ctx.summary()["max_deviation"] = max_dev;
  }
  ctx.summary()["statistical_curvature"] = gamma;
  ctx.write_csv("geometry.csv", table);

  auto& out = ctx.out();
  out << std::setprecision(10);
  for (int a = 0; a < p; ++a) out << "g_" << a + 1 << a + 1 << "=" << metric.g_lambda(a) << " ";
  for (int k = 0; k < np; ++k) out << "g_u" << pair_label(pair_at(p, k)) << "=" << metric.g_u(k) << " ";
  out << "gamma_A=" << gamma << "\n";
  if (fd) out << "max_deviation=" << max_dev << "\n";
}

// ---------------------------------------------------------------------------
// info-loss

void cmd_info_loss(const InfoLossOptions& opt, RunContext& ctx) {
  const Vector l = to_vector(opt.lambda);
  const int p = static_cast<int>(l.size());
  ctx.config() = {{"lambda", opt.lambda}, {"n", opt.n ? json(*opt.n) : json(nullptr)}};
  const LossMatrix b = loss_first_order(l);

  std::vector<std::string> header = {"quantity", "a", "b", "value"};
  if (opt.n) header.push_back("non_pd");
  CsvTable table(header);
  for (int a = 0; a < p; ++a) {
    for (int c = 0; c < p; ++c) {
      CsvRow row;
      row.text("loss_B").integer(a + 1).integer(c + 1).num(b(a, c));
      if (opt.n) row.blank();
      table.add(row);
    }
  }
  auto& out = ctx.out();
  out << std::setprecision(10) << "B =\n" << b.b << "\n";
  if (opt.n) {
    const CarriedInformation info = info_carried_by_l(l, *opt.n);
    const std::string flag = info.positive_definite ? "false" : "true";
    for (int a = 0; a < p; ++a) {
      for (int c = 0; c < p; ++c) {
        table.add(CsvRow().text("carried").integer(a + 1).integer(c + 1).num(info.g(a, c)).text(flag));
      }
    }
    table.add(CsvRow().text("carried_min_eigenvalue").blank().blank().num(info.min_eigenvalue).text(flag));
    ctx.summary()["carried_positive_definite"] = info.positive_definite;
    ctx.summary()["carried_min_eigenvalue"] = info.min_eigenvalue;
    out << "carried information (n = " << *opt.n << ") =\n" << info.g << "\n";
    if (!info.positive_definite) {
      ctx.err() << "warning: first-order carried information is not positive definite (min eigenvalue "
                << info.min_eigenvalue << "); the expansion is unreliable for these eigenvalues and n\n";
    }
  }
  ctx.write_csv("info_loss.csv", table);
}

// ---------------------------------------------------------------------------
// estimate

namespace {

std::vector<EstimatorMethod> parse_methods(const std::string& text) {
  if (text == "all") return {EstimatorMethod::kLbar, EstimatorMethod::kGammaFrame, EstimatorMethod::kStar};
  std::vector<EstimatorMethod> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "lbar") {
      out.push_back(EstimatorMethod::kLbar);
    } else if (item == "gamma-frame") {
      out.push_back(EstimatorMethod::kGammaFrame);
    } else if (item == "star") {
      out.push_back(EstimatorMethod::kStar);
    } else {
      throw DomainError("unknown method '" + item + "' (lbar, gamma-frame, star, all)");
    }
  }
  if (out.empty()) throw DomainError("--method is empty");
  return out;
}

}  // namespace

void cmd_estimate(const EstimateOptions& opt, RunContext& ctx) {
  const SpdMatrix s = symmetric_input(read_matrix_file(opt.input));
  const int p = s.dim();
  if (opt.n < p) throw DomainError("--n must be at least p = " + std::to_string(p));
  const std::vector<EstimatorMethod> methods = parse_methods(opt.method);

  Matrix gamma = Matrix::Identity(p, p);
  if (opt.gamma != "identity") {
    gamma = read_matrix_file(opt.gamma);
    if (gamma.rows() != p) throw DomainError("--gamma has dimension " + std::to_string(gamma.rows()) +
                                              ", input has " + std::to_string(p));
    if (orthogonality_error(gamma) > 1e-8) throw DomainError("--gamma is not orthogonal");
  }
  const EnsembleSpec spec = opt.ensemble ? EnsembleSpec::parse(*opt.ensemble) : default_estimation_ensemble(p);
  ctx.set_seed(opt.seed);
  ctx.config() = {{"input", opt.input}, {"n", opt.n},           {"method", opt.method},
                  {"gamma", opt.gamma}, {"ensemble", spec.to_string()}, {"p", p}};

  std::optional<OrthogonalEnsemble> ensemble;
  std::vector<std::string> header = {"method", "meta"};
  for (int a = 0; a < p; ++a) header.push_back("lambda_" + std::to_string(a + 1));
  header.push_back("trace");
  CsvTable table(header);
  auto& out = ctx.out();
  out << std::setprecision(10);
  for (EstimatorMethod m : methods) {
    EigenEstimate est;
    try {
      switch (m) {
        case EstimatorMethod::kLbar:
          est = lbar(s, opt.n);
          break;
        case EstimatorMethod::kGammaFrame:
          est = lambda_hat(s, opt.n, gamma);
          break;
        case EstimatorMethod::kStar:
          if (!ensemble) ensemble = make_ensemble(spec, p, opt.seed);
          est = lambda_star(s, opt.n, *ensemble);
          break;
      }
    } catch (const std::exception& e) {
      throw NumericError("estimator " + to_string(m) + " failed: " + e.what());
    }
    CsvRow row;
    row.text(to_string(m)).integer(static_cast<long long>(est.meta));
    for (int a = 0; a < p; ++a) row.num(est.lambda_hat(a));
    row.num(est.lambda_hat.sum());
    table.add(row);
    out << to_string(m) << ": " << est.lambda_hat.transpose() << "  (trace " << est.lambda_hat.sum() << ")\n";
  }
  ctx.write_csv("estimate.csv", table);
}

// ---------------------------------------------------------------------------
// experiment

int default_reps(const std::string& experiment, bool paper_scale) {
  if (experiment == "fig6") return paper_scale ? 10000 : 1000;
  if (experiment == "fig3" || experiment == "fig4" || experiment == "fig5" || experiment == "bias") {
    return paper_scale ? 100000 : 10000;
  }
  throw DomainError("unknown experiment '" + experiment + "' (fig3, fig4, fig5, fig6, bias)");
}

namespace {

void reject_flag(bool given, const std::string& flag, const std::string& experiment) {
  if (given) throw DomainError(flag + " is not used by experiment " + experiment);
}

void write_risk_report(const RiskReport& rep, RunContext& ctx) {
  std::vector<std::string> header = {rep.grid_name, "lambda_1", "lambda_2"};
  for (const auto& tag : rep.estimators) {
    header.push_back("risk_" + tag);
    header.push_back("se_" + tag);
  }
  for (std::size_t e = 1; e < rep.estimators.size(); ++e) {
    header.push_back("diff_" + rep.estimators[e]);
    header.push_back("diff_se_" + rep.estimators[e]);
  }
  header.push_back("reps");
  header.push_back("failures");
  CsvTable table(header);
  for (const ScenarioRow& r : rep.rows) {
    CsvRow row;
    row.num(r.grid_value).num(r.lambda(0)).num(r.lambda(1));
    for (const RiskSummary& s : r.risks.estimators) row.num(s.mean).num(s.std_error);
    for (std::size_t e = 1; e < r.risks.estimators.size(); ++e) {
      row.num(r.risks.estimators[e].diff_mean).num(r.risks.estimators[e].diff_std_error);
    }
    row.integer(r.risks.estimators.front().reps).integer(r.risks.failures);
    table.add(row);
  }
  const std::string csv = rep.experiment + ".csv";
  ctx.write_csv(csv, table);
  if (ctx.plot()) {
    std::vector<PlotSeries> series;
    for (std::size_t e = 0; e < rep.estimators.size(); ++e) {
      series.push_back({1, static_cast<int>(4 + 2 * e), static_cast<int>(5 + 2 * e), rep.estimators[e]});
    }
    ctx.write(rep.experiment + ".plot",
              gnuplot_script(csv, rep.experiment + ": KL risk", rep.grid_name, "risk", series));
  }
  int failures = 0;
  for (const ScenarioRow& r : rep.rows) failures += r.risks.failures;
  ctx.summary()["failures"] = failures;
}

void run_risk_experiment(const ExperimentOptions& opt, int reps, RunContext& ctx) {
  ExperimentConfig cfg;
  if (opt.name == "fig4") cfg = figure4_config(reps, opt.seed);
  if (opt.name == "fig5") cfg = figure5_config(reps, opt.seed);
  if (opt.name == "fig6") cfg = figure6_config(reps, opt.seed);
  if (opt.n) cfg.n = *opt.n;
  if (opt.ensemble) cfg.ensemble = EnsembleSpec::parse(*opt.ensemble);
  json c = {{"experiment", opt.name}, {"p", cfg.p},       {"n", cfg.n},
            {"reps", cfg.reps},       {"seed", cfg.seed}, {"grid", cfg.grid}};
  if (opt.name == "fig5") c["lambda"] = {1.0, cfg.lambda2};
  if (opt.name == "fig6") c["ensemble"] = cfg.ensemble.to_string();
  c["paper_scale"] = opt.paper_scale;
  ctx.config() = c;

  RiskReport rep;
  if (opt.name == "fig4") rep = figure4_experiment(cfg);
  if (opt.name == "fig5") rep = figure5_experiment(cfg);
  if (opt.name == "fig6") rep = figure6_experiment(cfg);
  write_risk_report(rep, ctx);

  auto& out = ctx.out();
  out << std::setprecision(6);
  if (opt.name == "fig4") {
    const auto& first = rep.rows.front().risks.estimators;
    const double ratio = first[0].mean / first[1].mean;
    ctx.summary()["risk_ratio_at_c1"] = ratio;
    out << "risk(lbar) / risk(lambda_hat) at c = 1: " << ratio << "\n";
  } else if (opt.name == "fig5") {
    const auto cross = figure5_crossover(rep);
    ctx.summary()["crossover_theta"] = cross ? json(*cross) : json(nullptr);
    if (cross) {
      out << "lambda_hat's risk first exceeds lbar's at theta = " << *cross << "\n";
    } else {
      out << "lambda_hat's risk stays below lbar's over the whole theta grid\n";
    }
  } else {
    std::vector<double> better;
    for (const ScenarioRow& r : rep.rows) {
      const RiskSummary& s = r.risks.estimators[1];
      if (s.diff_mean > 2.0 * s.diff_std_error) better.push_back(r.grid_value);
    }
    ctx.summary()["lambda_star_better_2se"] = better;
    out << "lambda_star beats lbar (paired, 2 se) at " << better.size() << " of " << rep.rows.size()
        << " grid points\n";
  }
}

void run_figure3(const ExperimentOptions& opt, int reps, RunContext& ctx) {
  Figure3Config cfg;
  cfg.n = opt.n.value_or(10);
  cfg.reps = reps;
  cfg.calib_reps = std::max(1000, reps);
  cfg.size_reps = std::max(1000, reps);
  cfg.seed = opt.seed;
  cfg.grid = opt.paper_scale ? figure3_full_grid() : figure3_subgrid();
  cfg.ensemble = opt.ensemble ? EnsembleSpec::parse(*opt.ensemble) : default_density_ensemble(2);
  ctx.config() = {{"experiment", "fig3"},
                  {"p", 2},
                  {"n", cfg.n},
                  {"reps", cfg.reps},
                  {"calib_reps", cfg.calib_reps},
                  {"size_reps", cfg.size_reps},
                  {"alpha", cfg.alpha},
                  {"seed", cfg.seed},
                  {"grid", cfg.grid},
                  {"ensemble", cfg.ensemble.to_string()},
                  {"paper_scale", opt.paper_scale}};
  const Figure3Report rep = figure3_experiment(cfg);

  CsvTable power({"j", "theta", "lambda_1", "lambda_2", "power_full", "se_full", "power_eigen", "se_eigen",
                  "diff", "pooled_se", "reps", "failures_full", "failures_eigen"});
  for (const Figure3Row& r : rep.rows) {
    power.add(CsvRow()
                  .integer(r.j)
                  .num(r.theta)
                  .num(r.lambda(0))
                  .num(r.lambda(1))
                  .num(r.full.rate)
                  .num(r.full.std_error)
                  .num(r.eigen.rate)
                  .num(r.eigen.std_error)
                  .num(r.diff)
                  .num(r.pooled_std_error)
                  .integer(cfg.reps)
                  .integer(r.full.failures)
                  .integer(r.eigen.failures));
  }
  ctx.write_csv("fig3.csv", power);

  CsvTable size({"test", "alpha", "threshold", "calib_reps", "size", "size_se", "size_reps", "failures"});
  auto size_row = [&](const CriticalValue& cv, const PowerPoint& pt) {
    size.add(CsvRow()
                 .text(to_string(cv.kind))
                 .num(cv.alpha)
                 .num(cv.threshold)
                 .integer(cv.calib_reps)
                 .num(pt.rate)
                 .num(pt.std_error)
                 .integer(cfg.size_reps)
                 .integer(pt.failures));
  };
  size_row(rep.cv_full, rep.size_full);
  size_row(rep.cv_eigen, rep.size_eigen);
  ctx.write_csv("fig3_size.csv", size);
  if (ctx.plot()) {
    ctx.write("fig3.plot", gnuplot_script("fig3.csv", "fig3: power at alpha = 0.05", "theta", "power",
                                          {{2, 5, 6, "full_lrt"}, {2, 7, 8, "eigen_lrt"}}));
  }

  double max_abs_diff = 0.0;
  for (const Figure3Row& r : rep.rows) max_abs_diff = std::max(max_abs_diff, std::abs(r.diff));
  ctx.summary() = {{"size_full", rep.size_full.rate},
                   {"size_eigen", rep.size_eigen.rate},
                   {"threshold_full", rep.cv_full.threshold},
                   {"threshold_eigen", rep.cv_eigen.threshold},
                   {"max_abs_power_diff", max_abs_diff}};
  ctx.out() << std::setprecision(6) << "size: full " << rep.size_full.rate << ", eigen " << rep.size_eigen.rate
            << "; max |power_full - power_eigen| = " << max_abs_diff << "\n";
}

void run_bias(const ExperimentOptions& opt, int reps, RunContext& ctx) {
  Vector lambda;
  if (!opt.lambda.empty()) {
    lambda = to_vector(opt.lambda);
    if (opt.p && *opt.p != lambda.size()) throw DomainError("--p disagrees with the length of --lambda");
  } else {
    const int p = opt.p.value_or(2);
    if (p < 1) throw DomainError("--p must be positive");
    lambda.resize(p);
    for (int i = 0; i < p; ++i) lambda(i) = std::pow(0.8, i);
  }
  const int n = opt.n.value_or(10);
  const int p = static_cast<int>(lambda.size());
  ctx.config() = {{"experiment", "bias"},
                  {"p", p},
                  {"n", n},
                  {"reps", reps},
                  {"seed", opt.seed},
                  {"lambda", std::vector<double>(lambda.data(), lambda.data() + p)},
                  {"paper_scale", opt.paper_scale}};
  const MajorizationReport rep = bias_majorization_check(SpdMatrix::diagonal(lambda), n, reps, opt.seed);

  CsvTable table({"j", "lambda", "mean_lbar", "se_lbar", "partial_sum_mean", "partial_sum_se",
                  "partial_sum_truth", "dominates", "max_trace_error"});
  for (int j = 0; j < p; ++j) {
    const std::string dom = j + 1 < p ? (rep.dominates[j] ? "true" : "false") : "";
    table.add(CsvRow()
                  .integer(j + 1)
                  .num(rep.lambda(j))
                  .num(rep.mean_lbar(j))
                  .num(rep.stderr_lbar(j))
                  .num(rep.partial_sum_mean(j))
                  .num(rep.partial_sum_stderr(j))
                  .num(rep.partial_sum_truth(j))
                  .text(dom)
                  .num(rep.max_trace_error));
  }
  ctx.write_csv("bias.csv", table);
  if (ctx.plot()) {
    ctx.write("bias.plot", gnuplot_script("bias.csv", "bias: partial sums of E[lbar] vs lambda", "j",
                                          "partial sum", {{1, 5, 6, "E[lbar]"}, {1, 7, 0, "lambda"}}));
  }
  ctx.summary() = {{"holds", rep.holds()}, {"max_trace_error", rep.max_trace_error}};
  ctx.out() << "majorization " << (rep.holds() ? "holds" : "does NOT hold") << " (reps " << rep.reps
            << ", max relative trace error " << rep.max_trace_error << ")\n";
}

}  // namespace

void cmd_experiment(const ExperimentOptions& opt, RunContext& ctx) {
  const int reps = opt.reps.value_or(default_reps(opt.name, opt.paper_scale));
  if (reps < 1) throw DomainError("--reps must be positive");
  if (opt.n && *opt.n < 2) throw DomainError("--n must be at least 2");
  ctx.set_seed(opt.seed);
  if (opt.name == "bias") {
    reject_flag(opt.ensemble.has_value(), "--ensemble", opt.name);
    run_bias(opt, reps, ctx);
    return;
  }
  reject_flag(!opt.lambda.empty(), "--lambda", opt.name);
  if (opt.p && *opt.p != 2) throw DomainError("experiment " + opt.name + " is defined for p = 2 only");
  if (opt.name == "fig3") {
    run_figure3(opt, reps, ctx);
  } else {
    reject_flag(opt.ensemble.has_value() && opt.name != "fig6", "--ensemble", opt.name);
    run_risk_experiment(opt, reps, ctx);
  }
}

}  // namespace eigengeo::cli
