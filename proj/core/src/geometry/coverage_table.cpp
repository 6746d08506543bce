#include "hoverplan/geometry/coverage_table.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hoverplan::geometry {

const CoverageRow& NormalizedCoverageTable::at(int M) const {
  require(M >= 1 && M <= max_M(), "coverage table has no row for M = " + std::to_string(M));
  return rows[static_cast<std::size_t>(M - 1)];
}

bool NormalizedCoverageTable::has_centers() const {
  for (const auto& r : rows) {
    if (static_cast<int>(r.centers.size()) != r.M) return false;
  }
  return !rows.empty();
}

CoveragePlan NormalizedCoverageTable::plan(int M, double area_side, double beamwidth) const {
  const CoverageRow& row = at(M);
  require(static_cast<int>(row.centers.size()) == M, "coverage table row has no centers");
  return scale_plan(row.centers, row.delta, area_side, beamwidth);
}

NormalizedCoverageTable build_coverage_table(int M_max, std::uint64_t seed, const CoverageOptions& options) {
  require(M_max >= 1, "build_coverage_table: M_max must be >= 1");
  NormalizedCoverageTable table;
  for (int M = 1; M <= M_max; ++M) {
    const CoveragePlan plan = solve_coverage(M, 1.0, seed, options);
    const Tour tour = solve_tsp(plan.centers, plan.centers.front());
    table.rows.push_back({M, plan.radius, tour.total_distance, plan.centers});
  }
  return table;
}

NormalizedCoverageTable reference_coverage_values() {
  static const double delta[] = {.707, .559, .504, .354, .326, .299, .274, .260, .231, .218, .213, .202,
                                 .194, .186, .180, .169, .166, .161, .158, .152, .149, .144, .141, .138};
  static const double alpha[] = {0.0,  1.00, 1.61, 2.00, 2.24, 2.36, 3.26, 2.59, 3.17, 3.59, 3.37, 3.56,
                                 3.99, 4.05, 4.14, 4.26, 4.16, 4.48, 4.44, 4.61, 4.86, 5.47, 5.06, 5.26};
  NormalizedCoverageTable table;
  for (int i = 0; i < 24; ++i) table.rows.push_back({i + 1, delta[i], alpha[i], {}});
  return table;
}

void write_coverage_table(std::ostream& out, const NormalizedCoverageTable& table, const std::string& comment) {
  out << "# hoverplan coverage-table v" << kCoverageTableVersion;
  if (!comment.empty()) out << ' ' << comment;
  out << '\n';
  out << "M,delta,alpha,centers...\n";
  out << std::setprecision(17);
  for (const auto& row : table.rows) {
    out << row.M << ',' << row.delta << ',' << row.alpha;
    for (const Point& c : row.centers) out << ',' << c.x << ';' << c.y;
    out << '\n';
  }
}

void write_coverage_table(const std::filesystem::path& path, const NormalizedCoverageTable& table,
                          const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_coverage_table(out, table, comment);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

NormalizedCoverageTable read_coverage_table(std::istream& in) {
  NormalizedCoverageTable table;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') {
      if (line.rfind("# hoverplan coverage-table v", 0) == 0) {
        const int version = std::stoi(line.substr(28));
        require(version == kCoverageTableVersion,
                "coverage table: unsupported version " + std::to_string(version));
      }
      continue;
    }
    if (!header_seen) {
      require(line.rfind("M,delta,alpha", 0) == 0, "coverage table: missing 'M,delta,alpha' header");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    CoverageRow row;
    try {
      std::getline(ss, cell, ',');
      row.M = std::stoi(cell);
      std::getline(ss, cell, ',');
      row.delta = std::stod(cell);
      std::getline(ss, cell, ',');
      row.alpha = std::stod(cell);
      while (std::getline(ss, cell, ',')) {
        const auto semi = cell.find(';');
        require(semi != std::string::npos, "center cell without ';'");
        row.centers.push_back({std::stod(cell.substr(0, semi)), std::stod(cell.substr(semi + 1))});
      }
    } catch (const std::exception& e) {
      throw InvalidArgument("coverage table line " + std::to_string(line_no) + ": " + e.what());
    }
    require(row.M == static_cast<int>(table.rows.size()) + 1,
            "coverage table line " + std::to_string(line_no) + ": rows must be M = 1, 2, ...");
    table.rows.push_back(std::move(row));
  }
  require(header_seen, "coverage table: empty input");
  return table;
}

NormalizedCoverageTable read_coverage_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open coverage table '" + path.string() + "'");
  return read_coverage_table(in);
}

double fitted_alpha(int M, double c, double d) { return std::sqrt(c * M) + d; }

AlphaFit fit_alpha(const NormalizedCoverageTable& table) {
  // alpha = k sqrt(M) + d is linear in (k, d); c = k^2.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  AlphaFit fit;
  for (const auto& row : table.rows) {
    if (row.M < 2) continue;
    const double x = std::sqrt(static_cast<double>(row.M));
    sx += x;
    sy += row.alpha;
    sxx += x * x;
    sxy += x * row.alpha;
    if (n == 0) fit.first_M = row.M;
    fit.last_M = row.M;
    ++n;
  }
  require(n >= 2, "fit_alpha: need at least two rows with M >= 2");
  const double denom = n * sxx - sx * sx;
  const double k = (n * sxy - sx * sy) / denom;
  fit.d = (sy - k * sx) / n;
  fit.c = k * k;

  double err2 = 0, norm2 = 0;
  for (const auto& row : table.rows) {
    if (row.M < 2) continue;
    const double e = row.alpha - (k * std::sqrt(static_cast<double>(row.M)) + fit.d);
    err2 += e * e;
    norm2 += row.alpha * row.alpha;
  }
  fit.relative_error = norm2 > 0 ? std::sqrt(err2 / norm2) : 0.0;
  return fit;
}

}  // namespace hoverplan::geometry
