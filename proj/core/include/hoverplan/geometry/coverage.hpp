#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hoverplan/types.hpp"

namespace hoverplan::geometry {

// M equal circles covering the square [0, area_side]^2.
struct CoveragePlan {
  int M = 0;
  double radius = 0.0;         // R [m]
  std::vector<Point> centers;  // hovering-location ground projections [m]
  double altitude = 0.0;       // h [m], R = h tan(phi/2)
  double area_side = 0.0;      // sqrt(|A|) [m]

  // Re-derives the altitude for a new antenna beamwidth.
  void set_beamwidth(double beamwidth);
};

struct CoverageOptions {
  int restarts = 50;
  // Perturb-and-reoptimize rounds applied to each restart's local optimum.
  int hops_per_restart = 30;
  int max_iterations = 400;
  double beamwidth = kPi / 2.0;
};

// Exact covering radius of `centers` over [0, side]^2: the largest distance
// from any point of the square to its nearest center. Evaluated on the
// vertices of the Voronoi cells clipped to the square.
double covering_radius(std::span<const Point> centers, double side);

// Voronoi cell of each center clipped to [0, side]^2 (counter-clockwise).
std::vector<std::vector<Point>> clipped_voronoi_cells(std::span<const Point> centers, double side);

struct Circle {
  Point center;
  double radius = 0.0;
};

// Smallest circle enclosing all points.
Circle min_enclosing_circle(std::span<const Point> points);

// Covers the square with M equal circles of minimal radius. The search runs
// on the unit square and is scaled afterwards, so plans for different sides
// are exact rescalings of each other. Deterministic for a fixed seed.
CoveragePlan solve_coverage(int M, double area_side, std::uint64_t seed,
                            const CoverageOptions& options = {});

// Builds a plan from normalized (unit-square) centers.
CoveragePlan scale_plan(std::span<const Point> unit_centers, double unit_radius, double area_side,
                        double beamwidth);

}  // namespace hoverplan::geometry
