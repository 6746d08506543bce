#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <memory>
#include <sstream>

#include "hoverplan/geometry/tsp.hpp"
#include "hoverplan/mission/planner.hpp"
#include "hoverplan/mission/report.hpp"

using namespace hoverplan;
using namespace hoverplan::mission;

namespace {

// Coverage solved once with a light search; every test scales from it.
std::shared_ptr<const geometry::NormalizedCoverageTable> cheap_table() {
  static const auto table = [] {
    geometry::CoverageOptions opts;
    opts.restarts = 6;
    opts.hops_per_restart = 6;
    return std::make_shared<const geometry::NormalizedCoverageTable>(geometry::build_coverage_table(12, 1, opts));
  }();
  return table;
}

PlanOptions options(int M_max = 12) {
  PlanOptions o;
  o.M_max = M_max;
  o.coverage = cheap_table();
  return o;
}

channel::RadioSpec fixed_radio() {
  channel::RadioSpec r;
  r.sinr_threshold = 1.882;
  r.aloha_probability = 0.0125;
  return r;
}

}  // namespace

TEST(Aggregation, NothingToCollectNeedsOneLocation) {
  auto o = options();
  o.fixed_beta = 1.8;
  const auto report = plan_aggregation(FieldSpec{}, geometry::DroneSpec{}, channel::RadioSpec{}, 0.0, o);
  ASSERT_TRUE(report.feasible());
  EXPECT_EQ(report.M_star(), 1);
  EXPECT_DOUBLE_EQ(report.optimum().hover_total, 0.0);
}

TEST(Aggregation, RecordBookkeeping) {
  auto o = options();
  o.fixed_beta = 1.882;
  o.fixed_aloha = 0.0125;
  o.stop_after_increases = 100;
  const auto report = plan_aggregation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 250.0, o);
  ASSERT_EQ(report.records.size(), 12u);
  for (const auto& rec : report.records) {
    if (!rec.feasible) continue;
    EXPECT_NEAR(rec.hover_total, rec.M * rec.hover_per_location, 1e-9 * (1 + rec.hover_total));
    EXPECT_NEAR(rec.total, rec.travel + rec.hover_total, 1e-9 * rec.total);
    EXPECT_NEAR(rec.slots, 250.0 / (rec.M * rec.success), 1e-9 * rec.slots);
    EXPECT_EQ(static_cast<int>(rec.centers.size()), rec.M);
    ASSERT_EQ(rec.uavs.size(), 1u);
    EXPECT_EQ(static_cast<int>(rec.uavs[0].order.size()), rec.M);
  }
  const auto& best = report.optimum();
  for (const auto& rec : report.records) EXPECT_GE(rec.total, best.total);

  const auto doubled = plan_aggregation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 500.0, o);
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    EXPECT_NEAR(doubled.records[i].hover_total, 2.0 * report.records[i].hover_total,
                1e-9 * report.records[i].hover_total);
  }
}

TEST(Aggregation, EarlyStopAfterIncreases) {
  auto o = options();
  o.fixed_beta = 1.882;
  o.fixed_aloha = 0.0125;
  const auto report = plan_aggregation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 250.0, o);
  const int last = report.records.back().M;
  EXPECT_LE(last, report.M_star() + 3);
}

TEST(Aggregation, FewerLocationsThanUavsIsInfeasible) {
  auto o = options(6);
  o.K = 3;
  o.fixed_beta = 1.882;
  o.fixed_aloha = 0.0125;
  o.stop_after_increases = 100;
  const auto report = plan_aggregation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 250.0, o);
  EXPECT_FALSE(report.find(2)->feasible);
  EXPECT_TRUE(report.find(3)->feasible);
  EXPECT_EQ(report.find(4)->uavs.size(), 3u);
  EXPECT_GE(report.M_star(), 3);
}

TEST(MultiUav, TotalIsBottleneck) {
  const std::vector<Point> centers{{10, 0}, {20, 0}, {0, 30}};
  const Point depot{0, 0};
  const auto a = geometry::make_tour(centers, depot, {0, 1});
  const auto b = geometry::make_tour(centers, depot, {2});
  const geometry::DroneSpec drone;
  const auto r = multi_uav_total({a, b}, 5.0, drone);
  ASSERT_EQ(r.per_uav.size(), 2u);
  EXPECT_NEAR(r.per_uav[0], geometry::travel_time(a, drone) + 10.0, 1e-12);
  EXPECT_NEAR(r.per_uav[1], geometry::travel_time(b, drone) + 5.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.total, std::max(r.per_uav[0], r.per_uav[1]));
  EXPECT_EQ(r.bottleneck, r.per_uav[0] >= r.per_uav[1] ? 0 : 1);
}

TEST(Estimation, TighterTargetNeverShortens) {
  auto o = options(12);
  o.fixed_beta = 1.882;
  o.fixed_aloha = 0.0125;
  o.stop_after_increases = 100;
  const auto loose = plan_estimation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 0.3, o);
  const auto tight = plan_estimation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 0.2, o);
  ASSERT_TRUE(loose.feasible());
  ASSERT_TRUE(tight.feasible());
  EXPECT_LE(loose.optimum().total, tight.optimum().total);
  for (std::size_t i = 0; i < tight.records.size(); ++i) {
    const auto& t = tight.records[i];
    if (!t.feasible || !loose.records[i].feasible) continue;
    EXPECT_GE(t.J_star, loose.records[i].J_star);
    EXPECT_NEAR(t.hover_per_location, t.J_star * t.slot_time, 1e-9);
  }
}

TEST(Area, LargerFieldNeedsNoFewerLocations) {
  auto o = options(12);
  o.fixed_beta = 1.882;
  o.fixed_aloha = 0.0125;
  const auto sweep = optimal_M_vs_area({200.0, 100.0}, MissionKind::Aggregation, FieldSpec{},
                                       geometry::DroneSpec{}, fixed_radio(), 250.0, o);
  ASSERT_EQ(sweep.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(sweep.rows[0].side, 100.0);
  EXPECT_LE(sweep.rows[0].M_star, sweep.rows[1].M_star);
  EXPECT_TRUE(sweep.non_decreasing);
}

TEST(Report, JsonAndCsvAreStable) {
  auto o = options(4);
  o.fixed_beta = 1.882;
  o.fixed_aloha = 0.0125;
  const auto r1 = plan_aggregation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 250.0, o);
  const auto r2 = plan_aggregation(FieldSpec{}, geometry::DroneSpec{}, fixed_radio(), 250.0, o);
  const auto j1 = report_json(r1, "00ff", 1);
  EXPECT_EQ(j1, report_json(r2, "00ff", 1));
  const auto doc = nlohmann::json::parse(j1);
  EXPECT_EQ(doc["records"].size(), r1.records.size());

  std::ostringstream csv;
  write_report_csv(csv, r1, "00ff", 1);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# config_hash=00ff seed=1");
  std::getline(lines, line);
  EXPECT_EQ(line, "M,feasible,R,h,beta,a,P_s,slots,T_hover,T_travel,T_total,R_mse,rho,J_star");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(r1.records.size()));
}

TEST(PlanOptions, Validation) {
  PlanOptions o;
  o.M_min = 0;
  EXPECT_THROW(o.validate(), InvalidArgument);
  o = PlanOptions{};
  o.M_max = 0;
  EXPECT_THROW(o.validate(), InvalidArgument);
  o = PlanOptions{};
  o.K = 0;
  EXPECT_THROW(o.validate(), InvalidArgument);
}
