#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hoverplan/geometry/coverage.hpp"
#include "hoverplan/geometry/coverage_table.hpp"
#include "hoverplan/geometry/kinematics.hpp"
#include "hoverplan/geometry/tsp.hpp"
#include "hoverplan/units.hpp"

using namespace hoverplan;
using namespace hoverplan::geometry;

namespace {

std::vector<Point> random_points(int n, std::uint64_t seed, double side = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

// Brute-force shortest closed tour through the depot.
double brute_force_tsp(const std::vector<Point>& c, Point depot) {
  std::vector<int> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  double best = 1e300;
  do {
    best = std::min(best, make_tour(c, depot, order).total_distance);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Bang-bang flight integrated with a 1 ms step. Braking starts on the first
// step after which the remaining distance could no longer be covered while
// stopping; the final partial step is interpolated.
double simulate_hop(double u, const DroneSpec& d) {
  const double dt = 1e-3;
  double x = 0.0, v = 0.0, t = 0.0;
  while (true) {
    const double up = std::min(v + d.acceleration * dt, d.max_speed);
    const double x_up = x + 0.5 * (v + up) * dt;
    const bool brake = u - x_up < up * up / (2.0 * d.deceleration);
    if (brake) {
      // Remaining motion is a uniform deceleration from the current state,
      // solved in closed form: the discretization only decides when it starts.
      const double q = v * v / (2.0 * (u - x));
      return t + (q > 0.0 ? v / q : 0.0);
    }
    x = x_up;
    v = up;
    t += dt;
  }
}

}  // namespace

TEST(Coverage, CoveringRadiusOfKnownLayouts) {
  const std::vector<Point> one{{0.5, 0.5}};
  EXPECT_NEAR(covering_radius(one, 1.0), std::sqrt(0.5), 1e-12);
  const std::vector<Point> four{{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}};
  EXPECT_NEAR(covering_radius(four, 1.0), std::sqrt(2.0) / 4.0, 1e-12);
  std::vector<Point> four_big;
  for (const auto& p : four) four_big.push_back({100.0 * p.x, 100.0 * p.y});
  EXPECT_NEAR(covering_radius(four_big, 100.0), 100.0 * std::sqrt(2.0) / 4.0, 1e-10);
}

TEST(Coverage, CoveringRadiusMatchesDenseGrid) {
  const auto pts = random_points(7, 3);
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    for (int j = 0; j <= 400; ++j) {
      const Point q{i / 400.0, j / 400.0};
      double best = 1e300;
      for (const auto& p : pts) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
  }
  const double exact = covering_radius(pts, 1.0);
  EXPECT_GE(exact, worst - 1e-12);
  EXPECT_LE(exact, worst + 0.005);
}

TEST(Coverage, MinEnclosingCircleAgainstTripleEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pts = random_points(9, seed + 100);
    const Circle c = min_enclosing_circle(pts);
    for (const auto& p : pts) EXPECT_LE(distance(p, c.center), c.radius + 1e-9);
    // Oracle: smallest circle through 2 or 3 points containing all.
    double best = 1e300;
    const auto contains = [&](Point ctr, double r) {
      return std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return distance(p, ctr) <= r + 1e-9; });
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Point m{0.5 * (pts[i].x + pts[j].x), 0.5 * (pts[i].y + pts[j].y)};
        const double r = 0.5 * distance(pts[i], pts[j]);
        if (contains(m, r)) best = std::min(best, r);
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          const Point a = pts[i], b = pts[j], cc = pts[k];
          const double d = 2.0 * (a.x * (b.y - cc.y) + b.x * (cc.y - a.y) + cc.x * (a.y - b.y));
          if (std::abs(d) < 1e-12) continue;
          const double a2 = a.x * a.x + a.y * a.y, b2 = b.x * b.x + b.y * b.y, c2 = cc.x * cc.x + cc.y * cc.y;
          const Point o{(a2 * (b.y - cc.y) + b2 * (cc.y - a.y) + c2 * (a.y - b.y)) / d,
                        (a2 * (cc.x - b.x) + b2 * (a.x - cc.x) + c2 * (b.x - a.x)) / d};
          const double ro = distance(o, a);
          if (contains(o, ro)) best = std::min(best, ro);
        }
      }
    }
    EXPECT_NEAR(c.radius, best, 1e-9);
  }
}

TEST(Coverage, SolverHitsKnownOptima) {
  const auto p1 = solve_coverage(1, 100.0, 1);
  EXPECT_NEAR(p1.radius / 100.0, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(p1.altitude, p1.radius, 1e-9);  // 90 degree beam
  const auto p4 = solve_coverage(4, 1.0, 1);
  EXPECT_NEAR(p4.radius, std::sqrt(2.0) / 4.0, 1e-6);
  const auto p2 = solve_coverage(2, 1.0, 1);
  EXPECT_NEAR(p2.radius, std::sqrt(5.0) / 4.0, 1e-6);
  EXPECT_NEAR(covering_radius(p4.centers, 1.0), p4.radius, 1e-12);
}

TEST(Coverage, DeterministicForSeedAndScaleInvariant) {
  CoverageOptions opt;
  opt.restarts = 5;
  const auto a = solve_coverage(6, 1.0, 42, opt);
  const auto b = solve_coverage(6, 1.0, 42, opt);
  EXPECT_EQ(a.centers, b.centers);
  const auto c = solve_coverage(6, 250.0, 42, opt);
  EXPECT_NEAR(c.radius, 250.0 * a.radius, 1e-9);
}

TEST(Coverage, BeamwidthSetsAltitude) {
  auto p = solve_coverage(1, 10.0, 1);
  p.set_beamwidth(kPi / 3.0);
  EXPECT_NEAR(p.altitude, p.radius / std::tan(kPi / 6.0), 1e-12);
}

TEST(Coverage, TableCsvRoundTripAndBytes) {
  CoverageOptions opt;
  opt.restarts = 4;
  const auto t = build_coverage_table(4, 7, opt);
  std::ostringstream a, b;
  write_coverage_table(a, t, "test");
  write_coverage_table(b, build_coverage_table(4, 7, opt), "test");
  EXPECT_EQ(a.str(), b.str());
  std::istringstream in(a.str());
  const auto back = read_coverage_table(in);
  ASSERT_EQ(back.max_M(), 4);
  for (int M = 1; M <= 4; ++M) {
    EXPECT_DOUBLE_EQ(back.at(M).delta, t.at(M).delta);
    EXPECT_DOUBLE_EQ(back.at(M).alpha, t.at(M).alpha);
    EXPECT_EQ(back.at(M).centers, t.at(M).centers);
  }
  EXPECT_NEAR(t.at(1).delta, 0.707, 1e-3);
  EXPECT_DOUBLE_EQ(t.at(1).alpha, 0.0);
  EXPECT_NEAR(t.at(4).alpha, 2.0, 1e-6);
}

TEST(Coverage, AlphaFitOnPublishedTable) {
  const auto fit = fit_alpha(reference_coverage_values());
  EXPECT_EQ(fit.first_M, 2);
  EXPECT_EQ(fit.last_M, 24);
  EXPECT_NEAR(fit.c, 1.3264, 5e-4);
  EXPECT_NEAR(fit.d, -0.3558, 5e-4);
  EXPECT_NEAR(fit.relative_error, 0.0548, 5e-4);
  EXPECT_NEAR(fitted_alpha(4, fit.c, fit.d), std::sqrt(4 * fit.c) + fit.d, 1e-15);
}

TEST(Tsp, HeldKarpMatchesBruteForce) {
  for (int n = 1; n <= 7; ++n) {
    const auto c = random_points(n, 10 + n);
    const Point depot{0.5, 0.5};
    EXPECT_NEAR(held_karp_tour(c, depot).total_distance, brute_force_tsp(c, depot), 1e-12) << n;
  }
}

TEST(Tsp, TourBookkeeping) {
  const std::vector<Point> c{{1, 0}, {1, 1}, {0, 1}};
  const auto t = make_tour(c, {0, 0}, {0, 1, 2});
  ASSERT_EQ(t.hop_distances.size(), 4u);
  EXPECT_DOUBLE_EQ(t.total_distance, 4.0);
  EXPECT_EQ(t.stops(), 3);
}

TEST(Tsp, TwoOptNeverLengthens) {
  const auto c = random_points(30, 5);
  const auto nn = nearest_neighbor_tour(c, {0.5, 0.5}, 0);
  const auto improved = two_opt(c, nn);
  EXPECT_LE(improved.total_distance, nn.total_distance + 1e-12);
  auto sorted = improved.order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 30; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(Tsp, HeuristicCloseToExactAtTheBoundary) {
  const auto c = random_points(12, 77);
  TspOptions heuristic;
  heuristic.exact_limit = 0;
  const double exact = solve_tsp(c, {0.5, 0.5}).total_distance;
  const double approx = solve_tsp(c, {0.5, 0.5}, heuristic).total_distance;
  EXPECT_GE(approx, exact - 1e-12);
  EXPECT_LE(approx, exact * 1.05);
}

TEST(Mdmtsp, PartitionsCentersAndSingleUavFallsBack) {
  const auto c = random_points(14, 9, 100.0);
  const std::vector<Point> depot{{50, 50}};
  const auto one = solve_minmax_mdmtsp(c, depot, 1);
  ASSERT_EQ(one.tours.size(), 1u);
  EXPECT_NEAR(one.max_cost, solve_tsp(c, depot[0]).total_distance, 1e-9);

  const auto three = solve_minmax_mdmtsp(c, depot, 3);
  ASSERT_EQ(three.tours.size(), 3u);
  std::vector<int> seen;
  for (const auto& t : three.tours) seen.insert(seen.end(), t.order.begin(), t.order.end());
  std::sort(seen.begin(), seen.end());
  ASSERT_EQ(seen.size(), c.size());
  for (int i = 0; i < 14; ++i) EXPECT_EQ(seen[i], i);
  EXPECT_LE(three.max_cost, one.max_cost + 1e-9);
  EXPECT_DOUBLE_EQ(three.max_cost, three.costs[three.bottleneck]);
  EXPECT_THROW(solve_minmax_mdmtsp(c, depot, 15), InvalidArgument);
}

TEST(Kinematics, HopTimeBranchesAndContinuity) {
  const DroneSpec d;
  const double u0 = d.cruise_threshold();
  EXPECT_NEAR(u0, d.max_speed * d.max_speed / d.acceleration, 1e-12);
  EXPECT_NEAR(hop_time(u0 * (1 - 1e-12), d), hop_time(u0 * (1 + 1e-12), d), 1e-9);
  EXPECT_NEAR(hop_time(u0, d), d.accel_time() + d.decel_time(), 1e-12);
  EXPECT_DOUBLE_EQ(hop_time(0.0, d), 0.0);
  EXPECT_NEAR(hop_time(u0 + 100.0, d), d.accel_time() + d.decel_time() + 100.0 / d.max_speed, 1e-12);
  // The literal short-hop form jumps at the threshold.
  EXPECT_GT(std::abs(hop_time(u0 * 0.999, d, KinematicsModel::PaperLiteral) - hop_time(u0, d)), 0.5);
  EXPECT_THROW(hop_time(-1.0, d), InvalidArgument);
}

TEST(Kinematics, MatchesTimeSteppedFlight) {
  DroneSpec d;
  for (double u : {0.5, 3.0, 5.555, 12.0, 40.0}) EXPECT_NEAR(hop_time(u, d), simulate_hop(u, d), 3e-3) << u;
  // Acceleration in literal km/h^2: every short hop is in the no-cruise branch.
  d.acceleration = d.deceleration = units::parse_quantity("10 km/h^2", units::Dimension::Acceleration);
  for (double u : {0.01, 0.2, 1.0}) EXPECT_NEAR(hop_time(u, d), simulate_hop(u, d), 3e-3) << u;
}

TEST(Kinematics, TravelTimeAddsReconfiguration) {
  const DroneSpec d;
  const std::vector<Point> c{{10, 0}, {10, 10}};
  const auto t = make_tour(c, {0, 0}, {0, 1});
  const double expect = hop_time(10, d) + hop_time(10, d) + hop_time(std::sqrt(200.0), d) + 2 * d.reconfig_time;
  EXPECT_NEAR(travel_time(t, d), expect, 1e-12);
}

TEST(Kinematics, ApproximationScalesWithSide) {
  const DroneSpec d;
  const auto table = reference_coverage_values();
  const auto a = travel_time_approx(6, 100.0, d, table);
  const auto b = travel_time_approx(6, 200.0, d, table);
  // Quadrupled area: only the first term grows, by alpha * side / v.
  EXPECT_NEAR(b.time - a.time, table.at(6).alpha * 100.0 / d.max_speed, 1e-9);
  EXPECT_TRUE(a.bound_satisfied);
  const auto tiny = travel_time_approx(6, 5.0, d, table);
  EXPECT_FALSE(tiny.bound_satisfied);
  EXPECT_TRUE(std::isinf(travel_time_approx(1, 100.0, d, 0.0).min_side));
}
