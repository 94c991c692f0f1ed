#pragma once

// File plumbing shared by the CLI commands: CSV tables, the run manifest,
// gnuplot scripts and the plain-text matrix input format.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eigengeo/spd_manifold.hpp"

namespace eigengeo::cli {

// Bumped whenever a column is added, removed or renamed in any CSV.
inline constexpr int kCsvSchemaVersion = 1;

// %.17g: enough digits to round-trip every double.
std::string format_number(double x);

class CsvRow {
 public:
  CsvRow& num(double x);
  CsvRow& integer(long long x);
  CsvRow& text(const std::string& s);
  CsvRow& blank() { return text(""); }

  const std::vector<std::string>& cells() const { return cells_; }

 private:
  std::vector<std::string> cells_;
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }

  // Throws std::logic_error if the row width differs from the header.
  void add(const CsvRow& row);

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes `contents` to path.tmp and renames it over path, so readers never
// observe a partially written file. Throws DomainError on I/O failure.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

// Creates the directory if needed; DomainError if it cannot be created.
std::filesystem::path ensure_output_dir(const std::string& dir);

// One line series for a gnuplot script: x and y are 1-based CSV columns,
// err (optional, 0 = none) a standard-error column drawn as error bars.
struct PlotSeries {
  int x = 1;
  int y = 2;
  int err = 0;
  std::string title;
};

std::string gnuplot_script(const std::string& csv_name, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::vector<PlotSeries>& series);

// Plain-text matrix: first token p, then p rows of p values. Throws
// DomainError on malformed input.
Matrix read_matrix_file(const std::string& path);

// Symmetrizes by averaging with the transpose after checking that the
// largest entrywise asymmetry |m_ij - m_ji| is below 1e-9.
SpdMatrix symmetric_input(const Matrix& m);

}  // namespace eigengeo::cli
