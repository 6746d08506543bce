#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hoverplan/geometry/coverage.hpp"
#include "hoverplan/geometry/tsp.hpp"

namespace hoverplan::geometry {

// Unit-square coverage for one M: delta = R / side, alpha = closed tour length
// through the hovering locations / side (depot legs excluded).
struct CoverageRow {
  int M = 0;
  double delta = 0.0;
  double alpha = 0.0;
  std::vector<Point> centers;  // normalized to [0, 1]^2; empty for reference rows
};

struct NormalizedCoverageTable {
  std::vector<CoverageRow> rows;  // rows[i].M == i + 1

  const CoverageRow& at(int M) const;
  int max_M() const { return static_cast<int>(rows.size()); }
  bool has_centers() const;

  // Coverage plan for a concrete square, scaled from the stored centers.
  CoveragePlan plan(int M, double area_side, double beamwidth) const;
};

inline constexpr int kCoverageTableVersion = 1;

NormalizedCoverageTable build_coverage_table(int M_max, std::uint64_t seed,
                                             const CoverageOptions& options = {});

// Reference unit-square values for M = 1..24 (no centers). Delta and alpha
// are rounded to three significant digits.
NormalizedCoverageTable reference_coverage_values();

// CSV cache: an optional "# ..." comment line, the header
// "M,delta,alpha,centers...", then one row per M with centers as x;y cells.
void write_coverage_table(std::ostream& out, const NormalizedCoverageTable& table,
                          const std::string& comment = {});
NormalizedCoverageTable read_coverage_table(std::istream& in);
NormalizedCoverageTable read_coverage_table(const std::filesystem::path& path);
void write_coverage_table(const std::filesystem::path& path, const NormalizedCoverageTable& table,
                          const std::string& comment = {});

// Least-squares fit alpha_M ~ sqrt(c M) + d.
struct AlphaFit {
  double c = 0.0;
  double d = 0.0;
  double relative_error = 0.0;  // ||alpha - fit||_2 / ||alpha||_2 over the fitted rows
  int first_M = 0;
  int last_M = 0;
};

// Fits rows with M >= 2; the single-location row has no tour (alpha_1 = 0)
// and is excluded. Requires at least two such rows.
AlphaFit fit_alpha(const NormalizedCoverageTable& table);
double fitted_alpha(int M, double c, double d);

}  // namespace hoverplan::geometry
