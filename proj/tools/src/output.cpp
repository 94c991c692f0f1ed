#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eigengeo::cli {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvRow& CsvRow::num(double x) {
  cells_.push_back(format_number(x));
  return *this;
}

CsvRow& CsvRow::integer(long long x) {
  cells_.push_back(std::to_string(x));
  return *this;
}

CsvRow& CsvRow::text(const std::string& s) {
  if (s.find_first_of(",\"\n") != std::string::npos) {
    throw std::logic_error("CSV cell needs quoting: " + s);
  }
  cells_.push_back(s);
  return *this;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add(const CsvRow& row) {
  if (row.cells().size() != header_.size()) {
    throw std::logic_error("CSV row has " + std::to_string(row.cells().size()) + " cells, header has " +
                           std::to_string(header_.size()));
  }
  rows_.push_back(row.cells());
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) throw DomainError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DomainError("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::filesystem::path ensure_output_dir(const std::string& dir) {
  const std::filesystem::path p = dir.empty() ? std::filesystem::path(".") : std::filesystem::path(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec || !std::filesystem::is_directory(p)) {
    throw DomainError("cannot create output directory " + p.string());
  }
  return p;
}

std::string gnuplot_script(const std::string& csv_name, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::vector<PlotSeries>& series) {
  std::ostringstream s;
  s << "# gnuplot script; run `gnuplot -p " << csv_name.substr(0, csv_name.rfind('.')) << ".plot`\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set title '" << title << "'\n"
    << "set xlabel '" << xlabel << "'\n"
    << "set ylabel '" << ylabel << "'\n"
    << "set grid\n"
    << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const PlotSeries& p = series[i];
    if (i) s << ", \\\n     ";
    if (p.err > 0) {
      s << "'" << csv_name << "' using " << p.x << ":" << p.y << ":" << p.err << " with yerrorlines title '"
        << p.title << "'";
    } else {
      s << "'" << csv_name << "' using " << p.x << ":" << p.y << " with linespoints title '" << p.title << "'";
    }
  }
  s << "\n";
  return s.str();
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read matrix file " + path);
  long long p = 0;
  if (!(f >> p) || p < 1 || p > 4096) throw DomainError(path + ": first token must be the dimension p >= 1");
  Matrix m(p, p);
  for (long long i = 0; i < p; ++i) {
    for (long long j = 0; j < p; ++j) {
      if (!(f >> m(i, j))) {
        throw DomainError(path + ": expected " + std::to_string(p * p) + " matrix entries, got " +
                          std::to_string(i * p + j));
      }
    }
  }
  std::string extra;
  if (f >> extra) throw DomainError(path + ": trailing content after " + std::to_string(p * p) + " entries");
  if (!m.allFinite()) throw DomainError(path + ": non-finite entry");
  return m;
}

SpdMatrix symmetric_input(const Matrix& m) {
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym >= 1e-9) {
    throw DomainError("input matrix is not symmetric: max |m_ij - m_ji| = " + format_number(asym));
  }
  return SpdMatrix(0.5 * (m + m.transpose()));
}

}  // namespace eigengeo::cli
