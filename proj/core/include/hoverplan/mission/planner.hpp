#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hoverplan/channel/optimize.hpp"
#include "hoverplan/field/covariance.hpp"
#include "hoverplan/field/edge_mse.hpp"
#include "hoverplan/geometry/coverage_table.hpp"
#include "hoverplan/geometry/kinematics.hpp"

namespace hoverplan::mission {

struct FieldSpec {
  double side = 100.0;   // square field side [m]
  double density = 0.1;  // lambda [nodes / m^2]
  field::CovarianceSpec cov;

  void validate() const;
  Point center() const { return {0.5 * side, 0.5 * side}; }
};

enum class MissionKind { Aggregation, Estimation };
const char* to_string(MissionKind kind);

struct PlanOptions {
  int M_min = 1;
  int M_max = 30;
  int K = 1;
  std::vector<Point> depots;  // empty: one depot at the field centre
  std::optional<double> fixed_beta;
  std::optional<double> fixed_aloha;
  // Aggregation: round zeta / (M P_s) up to whole slots.
  bool round_up_slots = false;
  // Stop once T_total has grown this many times in a row.
  int stop_after_increases = 3;
  geometry::KinematicsModel kinematics = geometry::KinematicsModel::Continuous;
  // Normalized coverage cache; rows missing centers are solved on demand.
  std::shared_ptr<const geometry::NormalizedCoverageTable> coverage;
  std::uint64_t seed = 1;
  geometry::CoverageOptions coverage_options;
  channel::BetaSearchOptions beta_search;
  field::SlotSearchOptions slot_search;

  void validate() const;
};

struct UavRecord {
  int depot = 0;
  std::vector<int> order;  // hovering-location indices in visiting order
  double travel = 0.0;
  double hover = 0.0;
  double total = 0.0;
};

struct MRecord {
  int M = 0;
  bool feasible = true;
  std::string note;
  double radius = 0.0;
  double altitude = 0.0;
  double beta = 0.0;
  double aloha = 0.0;
  double success = 0.0;     // P_s per slot
  double slot_time = 0.0;   // tau
  double slots = 0.0;       // slots per hovering location
  double hover_per_location = 0.0;
  double hover_total = 0.0; // sum over locations
  double travel = 0.0;
  double total = 0.0;
  // Estimation only.
  double R_mse = 0.0;
  double rho = 0.0;
  double edge_success = 0.0;
  int J_star = 0;
  std::vector<Point> centers;
  std::vector<UavRecord> uavs;  // one per UAV (K of them)
  int bottleneck = 0;
};

struct MissionReport {
  MissionKind kind = MissionKind::Aggregation;
  double zeta = 0.0;
  double delta = 0.0;
  int K = 1;
  double area_side = 0.0;
  std::vector<MRecord> records;  // ascending M
  int best = -1;                 // index into records, -1 if nothing feasible

  bool feasible() const { return best >= 0; }
  const MRecord& optimum() const;
  int M_star() const { return feasible() ? optimum().M : 0; }
  const MRecord* find(int M) const;
};

MissionReport plan_aggregation(const FieldSpec& field, const geometry::DroneSpec& drone,
                               const channel::RadioSpec& radio, double zeta, const PlanOptions& options = {});
MissionReport plan_estimation(const FieldSpec& field, const geometry::DroneSpec& drone,
                              const channel::RadioSpec& radio, double delta, const PlanOptions& options = {});

struct MultiUavTotal {
  double total = 0.0;
  int bottleneck = 0;
  std::vector<double> per_uav;
};

// max_k (travel(tour_k) + stops_k * hover_per_location).
MultiUavTotal multi_uav_total(const std::vector<geometry::Tour>& tours, double hover_per_location,
                              const geometry::DroneSpec& drone,
                              geometry::KinematicsModel model = geometry::KinematicsModel::Continuous);

struct AreaRow {
  double side = 0.0;
  int M_star = 0;
  double total = 0.0;
};

struct AreaSweep {
  std::vector<AreaRow> rows;
  bool non_decreasing = true;  // M* never drops as the area grows
};

// Optimal M for each field side (sides ascending after sorting).
AreaSweep optimal_M_vs_area(std::vector<double> sides, MissionKind kind, const FieldSpec& field,
                            const geometry::DroneSpec& drone, const channel::RadioSpec& radio, double target,
                            const PlanOptions& options = {});

}  // namespace hoverplan::mission
