#include "hoverplan/geometry/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hoverplan::geometry {

void CoveragePlan::set_beamwidth(double beamwidth) {
  require(beamwidth > 0.0 && beamwidth < kPi, "CoveragePlan: beamwidth must be in (0, pi)");
  altitude = radius / std::tan(0.5 * beamwidth);
}

namespace {

using Polygon = std::vector<Point>;

// Keeps the part of `poly` with n.x <= offset.
Polygon clip_half_plane(const Polygon& poly, Point n, double offset) {
  Polygon out;
  out.reserve(poly.size() + 1);
  const std::size_t count = poly.size();
  for (std::size_t i = 0; i < count; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % count];
    const double fp = n.x * p.x + n.y * p.y - offset;
    const double fq = n.x * q.x + n.y * q.y - offset;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

Circle circle_from(const Point& a, const Point& b) {
  const Point c{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  return {c, 0.5 * distance(a, b)};
}

Circle circle_from(const Point& a, const Point& b, const Point& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-300) {
    // Collinear: the widest pair spans the set.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const Point center{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  return {center, distance(center, a)};
}

bool inside(const Circle& c, const Point& p) {
  return distance(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-15;
}

double cells_radius(std::span<const Point> centers, const std::vector<Polygon>& cells) {
  double worst = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (const Point& v : cells[i]) worst = std::max(worst, distance(v, centers[i]));
  }
  return worst;
}

class UnitSquareSolver {
 public:
  UnitSquareSolver(int M, const CoverageOptions& options) : M_(M), options_(options) {}

  // Minimax relocation: move every center to the center of the smallest
  // circle enclosing its clipped Voronoi cell until the radius settles.
  double relocate(std::vector<Point>& centers) const {
    double best = std::numeric_limits<double>::infinity();
    std::vector<Point> best_centers = centers;
    int stalled = 0;
    for (int it = 0; it < options_.max_iterations; ++it) {
      const auto cells = clipped_voronoi_cells(centers, 1.0);
      const double radius = cells_radius(centers, cells);
      if (radius < best - 1e-13) {
        best = radius;
        best_centers = centers;
        stalled = 0;
      } else if (++stalled >= 8) {
        break;
      }
      for (std::size_t i = 0; i < centers.size(); ++i) {
        if (!cells[i].empty()) centers[i] = min_enclosing_circle(cells[i]).center;
      }
    }
    const double final_radius = covering_radius(centers, 1.0);
    if (final_radius < best) return final_radius;
    centers = best_centers;
    return best;
  }

  // Moves the center with the smallest cell onto the point of the square
  // farthest from every center.
  void fill_worst_gap(std::vector<Point>& centers) const {
    const auto cells = clipped_voronoi_cells(centers, 1.0);
    double worst = -1.0;
    Point gap{};
    std::size_t smallest = 0;
    double smallest_radius = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double cell_radius = 0.0;
      for (const Point& v : cells[i]) {
        const double d = distance(v, centers[i]);
        cell_radius = std::max(cell_radius, d);
        if (d > worst) {
          worst = d;
          gap = v;
        }
      }
      if (cell_radius < smallest_radius) {
        smallest_radius = cell_radius;
        smallest = i;
      }
    }
    centers[smallest] = gap;
  }

  template <class Rng>
  void perturb(std::vector<Point>& centers, double scale, Rng& rng) const {
    std::normal_distribution<double> noise(0.0, scale);
    for (Point& c : centers) {
      c.x = std::clamp(c.x + noise(rng), 0.0, 1.0);
      c.y = std::clamp(c.y + noise(rng), 0.0, 1.0);
    }
  }

  template <class Rng>
  double run_restart(std::vector<Point>& centers, Rng& rng) const {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    centers.resize(static_cast<std::size_t>(M_));
    for (Point& c : centers) c = {uni(rng), uni(rng)};
    double best = relocate(centers);
    for (int hop = 0; hop < options_.hops_per_restart; ++hop) {
      std::vector<Point> trial = centers;
      if (hop % 3 == 2) {
        fill_worst_gap(trial);
      } else {
        perturb(trial, (hop % 3 == 0 ? 0.05 : 0.25) * best, rng);
      }
      const double radius = relocate(trial);
      if (radius < best - 1e-12) {
        best = radius;
        centers = std::move(trial);
      }
    }
    return best;
  }

 private:
  int M_;
  CoverageOptions options_;
};

}  // namespace

std::vector<std::vector<Point>> clipped_voronoi_cells(std::span<const Point> centers, double side) {
  std::vector<Polygon> cells(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    Polygon poly{{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}};
    const Point& ci = centers[i];
    for (std::size_t j = 0; j < centers.size() && !poly.empty(); ++j) {
      if (j == i) continue;
      const Point& cj = centers[j];
      const Point n{cj.x - ci.x, cj.y - ci.y};
      if (n.x == 0.0 && n.y == 0.0) {
        // Coincident centers: the lower index owns the shared cell.
        if (j < i) poly.clear();
        continue;
      }
      const double offset = 0.5 * ((cj.x * cj.x + cj.y * cj.y) - (ci.x * ci.x + ci.y * ci.y));
      poly = clip_half_plane(poly, n, offset);
    }
    cells[i] = std::move(poly);
  }
  return cells;
}

double covering_radius(std::span<const Point> centers, double side) {
  require(!centers.empty(), "covering_radius: need at least one center");
  return cells_radius(centers, clipped_voronoi_cells(centers, side));
}

Circle min_enclosing_circle(std::span<const Point> points) {
  if (points.empty()) return {};
  Circle c{points[0], 0.0};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (inside(c, points[i])) continue;
    c = {points[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, points[j])) continue;
      c = circle_from(points[i], points[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (inside(c, points[k])) continue;
        c = circle_from(points[i], points[j], points[k]);
      }
    }
  }
  return c;
}

CoveragePlan scale_plan(std::span<const Point> unit_centers, double unit_radius, double area_side,
                        double beamwidth) {
  CoveragePlan plan;
  plan.M = static_cast<int>(unit_centers.size());
  plan.area_side = area_side;
  plan.radius = unit_radius * area_side;
  plan.centers.reserve(unit_centers.size());
  for (const Point& c : unit_centers) plan.centers.push_back({c.x * area_side, c.y * area_side});
  plan.set_beamwidth(beamwidth);
  return plan;
}

CoveragePlan solve_coverage(int M, double area_side, std::uint64_t seed, const CoverageOptions& options) {
  require(M >= 1, "solve_coverage: M must be >= 1");
  require(area_side > 0.0, "solve_coverage: area_side must be positive");
  require(options.restarts >= 1, "solve_coverage: restarts must be >= 1");

  if (M == 1) {
    const Point center{0.5, 0.5};
    return scale_plan(std::span(&center, 1), std::sqrt(2.0) / 2.0, area_side, options.beamwidth);
  }

  const UnitSquareSolver solver(M, options);
  std::vector<Point> best_centers;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(M), static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::vector<Point> centers;
    const double radius = solver.run_restart(centers, rng);
    // Ties keep the earliest restart, so the result depends only on the seed.
    if (radius < best - 1e-12) {
      best = radius;
      best_centers = std::move(centers);
    }
  }
  return scale_plan(best_centers, best, area_side, options.beamwidth);
}

}  // namespace hoverplan::geometry
