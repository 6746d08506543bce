#include "hoverplan/mission/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hoverplan/channel/success.hpp"
#include "hoverplan/geometry/tsp.hpp"

namespace hoverplan::mission {

void FieldSpec::validate() const {
  require(side > 0.0 && std::isfinite(side), "field: side must be positive");
  require(density >= 0.0 && std::isfinite(density), "field: density must be non-negative");
  cov.validate();
}

const char* to_string(MissionKind kind) { return kind == MissionKind::Aggregation ? "aggregation" : "estimation"; }

void PlanOptions::validate() const {
  require(M_min >= 1 && M_max >= M_min, "plan: need 1 <= M_min <= M_max");
  require(K >= 1, "plan: K must be >= 1");
  require(stop_after_increases >= 1, "plan: stop_after_increases must be >= 1");
  if (fixed_beta) require(*fixed_beta >= 1.0, "plan: fixed beta must be >= 1");
  if (fixed_aloha) require(*fixed_aloha > 0.0 && *fixed_aloha <= 1.0, "plan: fixed a must be in (0, 1]");
}

const MRecord& MissionReport::optimum() const {
  require(feasible(), "mission report: no feasible M");
  return records[best];
}

const MRecord* MissionReport::find(int M) const {
  for (const auto& r : records) {
    if (r.M == M) return &r;
  }
  return nullptr;
}

MultiUavTotal multi_uav_total(const std::vector<geometry::Tour>& tours, double hover_per_location,
                              const geometry::DroneSpec& drone, geometry::KinematicsModel model) {
  require(!tours.empty(), "multi_uav_total: no tours");
  MultiUavTotal out;
  for (std::size_t k = 0; k < tours.size(); ++k) {
    const double t = geometry::travel_time(tours[k], drone, model) + tours[k].stops() * hover_per_location;
    out.per_uav.push_back(t);
    if (t > out.total) {
      out.total = t;
      out.bottleneck = static_cast<int>(k);
    }
  }
  return out;
}

namespace {

geometry::CoveragePlan coverage_for(int M, const FieldSpec& field, const geometry::DroneSpec& drone,
                                    const PlanOptions& options) {
  if (options.coverage && M <= options.coverage->max_M() && !options.coverage->at(M).centers.empty()) {
    return options.coverage->plan(M, field.side, drone.beamwidth);
  }
  geometry::CoverageOptions co = options.coverage_options;
  co.beamwidth = drone.beamwidth;
  return geometry::solve_coverage(M, field.side, options.seed, co);
}

channel::RadioSpec tuned_radio(const channel::HoverGeometry& geom, const channel::RadioSpec& radio,
                               const PlanOptions& options) {
  channel::RadioSpec r = radio;
  if (options.fixed_aloha) r.aloha_probability = *options.fixed_aloha;
  if (options.fixed_beta) {
    r.sinr_threshold = *options.fixed_beta;
    if (!options.fixed_aloha) r.aloha_probability = channel::optimal_aloha(geom, r);
    return r;
  }
  channel::BetaSearchOptions search = options.beta_search;
  search.optimize_aloha = !options.fixed_aloha;
  const auto best = channel::optimal_beta(geom, r, search);
  r.sinr_threshold = best.beta;
  r.aloha_probability = best.aloha;
  return r;
}

void assign_routes(MRecord& rec, const FieldSpec& field, const geometry::DroneSpec& drone,
                   const PlanOptions& options) {
  std::vector<Point> depots = options.depots;
  if (depots.empty()) depots.push_back(field.center());
  if (options.K == 1) {
    const auto tour = geometry::solve_tsp(rec.centers, depots[0]);
    rec.travel = geometry::travel_time(tour, drone, options.kinematics);
    rec.total = rec.hover_total + rec.travel;
    rec.uavs.push_back({0, tour.order, rec.travel, rec.hover_total, rec.total});
    return;
  }
  geometry::MdmtspOptions mo;
  const double hover = rec.hover_per_location;
  mo.tour_cost = [&](const geometry::Tour& t) {
    return geometry::travel_time(t, drone, options.kinematics) + t.stops() * hover;
  };
  const auto plan = geometry::solve_minmax_mdmtsp(rec.centers, depots, options.K, mo);
  std::vector<geometry::Tour> tours = plan.tours;
  const auto totals = multi_uav_total(tours, hover, drone, options.kinematics);
  rec.bottleneck = totals.bottleneck;
  rec.total = totals.total;
  rec.travel = 0.0;
  for (std::size_t k = 0; k < tours.size(); ++k) {
    const double travel = geometry::travel_time(tours[k], drone, options.kinematics);
    rec.travel += travel;
    rec.uavs.push_back({static_cast<int>(k % depots.size()), tours[k].order, travel, tours[k].stops() * hover,
                        totals.per_uav[k]});
  }
}

template <class HoverFn>
MissionReport sweep(MissionKind kind, const FieldSpec& field, const geometry::DroneSpec& drone,
                    const PlanOptions& options, HoverFn&& hover) {
  field.validate();
  drone.validate();
  options.validate();
  MissionReport report;
  report.kind = kind;
  report.K = options.K;
  report.area_side = field.side;

  double previous = std::numeric_limits<double>::quiet_NaN();
  int increases = 0;
  for (int M = options.M_min; M <= options.M_max; ++M) {
    MRecord rec;
    rec.M = M;
    if (M < options.K) {
      rec.feasible = false;
      rec.note = "fewer hovering locations than UAVs";
      report.records.push_back(std::move(rec));
      continue;
    }
    const auto plan = coverage_for(M, field, drone, options);
    rec.radius = plan.radius;
    rec.altitude = plan.altitude;
    rec.centers = plan.centers;
    hover(rec, channel::HoverGeometry::make(plan.radius, plan.altitude, field.density));
    if (!rec.feasible) {
      report.records.push_back(std::move(rec));
      continue;
    }
    rec.hover_total = M * rec.hover_per_location;
    assign_routes(rec, field, drone, options);
    report.records.push_back(rec);

    const int index = static_cast<int>(report.records.size()) - 1;
    if (report.best < 0 || rec.total < report.records[report.best].total) report.best = index;
    increases = (!std::isnan(previous) && rec.total > previous) ? increases + 1 : 0;
    previous = rec.total;
    if (increases >= options.stop_after_increases) break;
  }
  return report;
}

}  // namespace

MissionReport plan_aggregation(const FieldSpec& field, const geometry::DroneSpec& drone,
                               const channel::RadioSpec& radio, double zeta, const PlanOptions& options) {
  require(zeta >= 0.0 && std::isfinite(zeta), "plan_aggregation: zeta must be non-negative");
  radio.validate();
  auto report = sweep(MissionKind::Aggregation, field, drone, options, [&](MRecord& rec, const auto& geom) {
    const auto r = tuned_radio(geom, radio, options);
    rec.beta = r.sinr_threshold;
    rec.aloha = r.aloha_probability;
    rec.success = channel::success_probability(geom, r);
    const auto h = channel::hover_time_aggregation(rec.M, zeta, rec.success, r);
    rec.slot_time = h.slot_time;
    if (!h.feasible) {
      rec.feasible = false;
      rec.note = "zero success probability";
      return;
    }
    rec.slots = options.round_up_slots ? std::ceil(h.slots) : h.slots;
    rec.hover_per_location = rec.slots * rec.slot_time;
  });
  report.zeta = zeta;
  return report;
}

MissionReport plan_estimation(const FieldSpec& field, const geometry::DroneSpec& drone,
                              const channel::RadioSpec& radio, double delta, const PlanOptions& options) {
  require(delta > 0.0 && delta < field.cov.sigma2, "plan_estimation: delta must lie in (0, sigma2)");
  radio.validate();
  auto report = sweep(MissionKind::Estimation, field, drone, options, [&](MRecord& rec, const auto& geom) {
    const auto r = tuned_radio(geom, radio, options);
    rec.beta = r.sinr_threshold;
    rec.aloha = r.aloha_probability;
    const channel::InterferenceLaplace laplace(geom, r);
    rec.success = channel::success_probability(laplace);
    const auto budget = field::optimal_slots_estimation(laplace, field.cov, delta, options.slot_search);
    rec.slot_time = budget.slot_time;
    if (!budget.feasible) {
      rec.feasible = false;
      rec.note = "no edge success probability in the admissible R_mse range";
      return;
    }
    rec.R_mse = budget.R_mse;
    rec.rho = budget.rho;
    rec.edge_success = budget.P_e_s;
    rec.J_star = budget.J_star;
    rec.slots = budget.J_star;
    rec.hover_per_location = budget.hover_time;
  });
  report.delta = delta;
  return report;
}

AreaSweep optimal_M_vs_area(std::vector<double> sides, MissionKind kind, const FieldSpec& field,
                            const geometry::DroneSpec& drone, const channel::RadioSpec& radio, double target,
                            const PlanOptions& options) {
  require(sides.size() >= 2, "optimal_M_vs_area: need at least two field sizes");
  std::sort(sides.begin(), sides.end());
  AreaSweep out;
  for (double side : sides) {
    FieldSpec f = field;
    f.side = side;
    const auto report = kind == MissionKind::Aggregation ? plan_aggregation(f, drone, radio, target, options)
                                                         : plan_estimation(f, drone, radio, target, options);
    AreaRow row{side, report.M_star(), report.feasible() ? report.optimum().total : 0.0};
    if (!out.rows.empty() && row.M_star < out.rows.back().M_star) out.non_decreasing = false;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace hoverplan::mission
