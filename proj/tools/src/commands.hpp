#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "output.hpp"

namespace eigengeo::cli {

// State of one invocation: where files go and what the manifest records.
class RunContext {
 public:
  RunContext(std::string command, std::vector<std::string> argv, const std::string& out_dir, bool plot,
             std::ostream& out, std::ostream& err);

  const std::filesystem::path& out_dir() const { return out_dir_; }
  bool plot() const { return plot_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  nlohmann::json& config() { return config_; }
  nlohmann::json& summary() { return summary_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  // Writes the file atomically and records it for the manifest.
  void write(const std::string& name, const std::string& contents);
  void write_csv(const std::string& name, const CsvTable& table) { write(name, table.str()); }

  // manifest.json, written last so its presence marks a complete run.
  void finish();

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::filesystem::path out_dir_;
  bool plot_;
  std::ostream& out_;
  std::ostream& err_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json summary_ = nlohmann::json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
  std::chrono::system_clock::time_point started_at_;
};

struct GeometryOptions {
  std::vector<double> lambda;
  bool check_fd = false;
};

struct InfoLossOptions {
  std::vector<double> lambda;
  std::optional<double> n;
};

struct EstimateOptions {
  std::string input;
  int n = 0;
  std::string method = "all";
  std::string gamma = "identity";
  std::optional<std::string> ensemble;
  std::uint64_t seed = 1;
};

struct ExperimentOptions {
  std::string name;
  std::optional<int> reps;
  std::uint64_t seed = 1;
  std::optional<std::string> ensemble;
  std::optional<int> n;
  std::optional<int> p;
  std::vector<double> lambda;
  bool paper_scale = false;
};

void cmd_geometry(const GeometryOptions& opt, RunContext& ctx);
void cmd_info_loss(const InfoLossOptions& opt, RunContext& ctx);
void cmd_estimate(const EstimateOptions& opt, RunContext& ctx);
void cmd_experiment(const ExperimentOptions& opt, RunContext& ctx);

// Replications used when --reps is absent.
int default_reps(const std::string& experiment, bool paper_scale);

}  // namespace eigengeo::cli
