#pragma once

#include <span>

namespace hoverplan::geometry {

struct Tour;
struct NormalizedCoverageTable;

// Drone motion limits, all SI.
struct DroneSpec {
  double max_speed = 20.0 * 1000.0 / 3600.0;     // v [m/s]
  double acceleration = 10.0 * 1000.0 / 3600.0;   // q_hat [m/s^2], 10 km/h per second
  double deceleration = 10.0 * 1000.0 / 3600.0;   // q_check [m/s^2]
  double reconfig_time = 8.0;                    // t_conf [s]
  double beamwidth = 3.14159265358979323846 / 2.0;   // phi [rad]

  void validate() const;

  double accel_time() const { return max_speed / acceleration; }
  double decel_time() const { return max_speed / deceleration; }
  double accel_distance() const { return 0.5 * acceleration * accel_time() * accel_time(); }
  double decel_distance() const { return 0.5 * deceleration * decel_time() * decel_time(); }
  // Shortest hop on which the drone reaches max_speed.
  double cruise_threshold() const { return accel_distance() + decel_distance(); }
};

enum class KinematicsModel {
  // Constant acceleration to the midpoint-equivalent switch time; continuous
  // at the cruise threshold.
  Continuous,
  // Short-hop branch sqrt(u / (q_hat + q_check)); jumps at the cruise
  // threshold, kept only for comparison runs.
  PaperLiteral,
};

// Time to fly a hop of length u starting and ending at rest.
double hop_time(double u, const DroneSpec& drone, KinematicsModel model = KinematicsModel::Continuous);

// Sum of hop times plus one reconfiguration per hovering location.
double travel_time(const Tour& tour, const DroneSpec& drone,
                   KinematicsModel model = KinematicsModel::Continuous);
double travel_time(std::span<const double> hops, int stops, const DroneSpec& drone,
                   KinematicsModel model = KinematicsModel::Continuous);

struct TravelApprox {
  double time = 0.0;
  bool bound_satisfied = false;  // false: the field is too small for the cruise assumption
  double min_side = 0.0;         // smallest side length for which the bound holds
};

// Large-field closed form using the normalized tour length alpha_M.
TravelApprox travel_time_approx(int M, double area_side, const DroneSpec& drone, double alpha);
TravelApprox travel_time_approx(int M, double area_side, const DroneSpec& drone,
                                const NormalizedCoverageTable& table);

}  // namespace hoverplan::geometry
