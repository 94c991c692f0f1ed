#include "cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "eigengeo/errors.hpp"

namespace eigengeo::cli {

namespace {

// Points a replayed argv at a different output directory.
std::vector<std::string> redirect_output(std::vector<std::string> argv, const std::string& out_dir) {
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--out" && i + 1 < argv.size()) {
      argv[i + 1] = out_dir;
      return argv;
    }
    if (argv[i].rfind("--out=", 0) == 0) {
      argv[i] = "--out=" + out_dir;
      return argv;
    }
  }
  argv.push_back("--out");
  argv.push_back(out_dir);
  return argv;
}

std::vector<std::string> manifest_argv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read manifest " + path);
  nlohmann::json m;
  try {
    f >> m;
    return m.at("argv").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed manifest " + path + ": " + e.what());
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth) {
  CLI::App app{"Information geometry of Gaussian covariance eigenvalues", "eigengeo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EIGENGEO_VERSION_STRING);

  std::string out_dir = ".";
  bool plot = false;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory (created if missing)");
  };

  GeometryOptions geo;
  auto* geometry = app.add_subcommand("geometry", "Metric, curvatures and statistical curvature at lambda");
  geometry->add_option("--lambda", geo.lambda, "Eigenvalues, strictly descending, comma separated")
      ->required()
      ->delimiter(',');
  geometry->add_flag("--check-fd", geo.check_fd, "Add finite-difference oracle columns");
  add_output(geometry);

  InfoLossOptions loss;
  auto* info = app.add_subcommand("info-loss", "First-order information lost by the sample eigenvalues");
  info->add_option("--lambda", loss.lambda, "Eigenvalues, strictly descending, comma separated")
      ->required()
      ->delimiter(',');
  info->add_option("--n", loss.n, "Sample size; adds the information carried by l")->check(CLI::PositiveNumber);
  add_output(info);

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Eigenvalue estimates from a product-sum matrix S");
  estimate->add_option("--input", est.input, "Matrix file: p, then p rows of p values")->required();
  estimate->add_option("--n", est.n, "Number of observations summed in S")->required();
  estimate->add_option("--method", est.method, "lbar, gamma-frame, star, a comma list, or all");
  estimate->add_option("--gamma", est.gamma, "Frame for gamma-frame: 'identity' or a matrix file");
  estimate->add_option("--ensemble", est.ensemble, "Quadrature for star: equidistant:K or haar:m");
  estimate->add_option("--seed", est.seed, "Seed for Haar ensembles");
  add_output(estimate);

  ExperimentOptions exp;
  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo experiments");
  experiment->add_option("name", exp.name, "fig3, fig4, fig5, fig6 or bias")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6", "bias"}));
  experiment->add_option("--reps", exp.reps, "Replications per grid point");
  experiment->add_option("--seed", exp.seed, "Master seed");
  experiment->add_option("--ensemble", exp.ensemble, "Quadrature ensemble (fig3, fig6)");
  experiment->add_option("--n", exp.n, "Sample size (default 10)");
  experiment->add_option("--p", exp.p, "Dimension (bias; the figures are p = 2)");
  experiment->add_option("--lambda", exp.lambda, "True eigenvalues (bias)")->delimiter(',');
  experiment->add_flag("--paper-scale", exp.paper_scale, "Full replication counts and grids");
  experiment->add_flag("--plot", plot, "Also write a gnuplot script");
  add_output(experiment);

  std::string manifest;
  std::optional<std::string> replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest.json");
  replay->add_option("manifest", manifest, "Path to manifest.json")->required();
  replay->add_option("--out", replay_out, "Write to this directory instead of the recorded one");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (replay->parsed()) {
    if (depth > 0) throw DomainError("a manifest cannot replay another manifest");
    std::vector<std::string> argv = manifest_argv(manifest);
    if (replay_out) argv = redirect_output(std::move(argv), *replay_out);
    return dispatch(argv, out, err, depth + 1);
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string command = sub->get_name();
  if (sub == experiment) command += " " + exp.name;
  RunContext ctx(command, args, out_dir, plot, out, err);
  if (sub == geometry) cmd_geometry(geo, ctx);
  if (sub == info) cmd_info_loss(loss, ctx);
  if (sub == estimate) cmd_estimate(est, ctx);
  if (sub == experiment) cmd_experiment(exp, ctx);
  ctx.finish();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err, 0);
  } catch (const NearDegenerateSpectrum& e) {
    err << "error: " << e.what() << " (gap " << e.gap() << ", tolerance " << e.tolerance() << ")\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace eigengeo::cli
