#include "hoverplan/geometry/kinematics.hpp"

#include <cmath>
#include <limits>

#include "hoverplan/geometry/coverage_table.hpp"
#include "hoverplan/geometry/tsp.hpp"
#include "hoverplan/types.hpp"

namespace hoverplan::geometry {

void DroneSpec::validate() const {
  require(max_speed > 0.0, "DroneSpec: max_speed must be positive");
  require(acceleration > 0.0, "DroneSpec: acceleration must be positive");
  require(deceleration > 0.0, "DroneSpec: deceleration must be positive");
  require(reconfig_time >= 0.0, "DroneSpec: reconfig_time must be non-negative");
  require(beamwidth > 0.0 && beamwidth < kPi, "DroneSpec: beamwidth must be in (0, pi)");
}

double hop_time(double u, const DroneSpec& drone, KinematicsModel model) {
  require(u >= 0.0, "hop_time: distance must be non-negative");
  const double threshold = drone.cruise_threshold();
  if (u >= threshold) {
    return drone.accel_time() + drone.decel_time() + (u - threshold) / drone.max_speed;
  }
  if (model == KinematicsModel::PaperLiteral) {
    return std::sqrt(u / (drone.acceleration + drone.deceleration));
  }
  // Accelerate at q_hat then brake at q_check with no cruise phase:
  // u = v_peak^2 / 2 * (1/q_hat + 1/q_check), t = v_peak * (1/q_hat + 1/q_check).
  const double inv_sum = 1.0 / drone.acceleration + 1.0 / drone.deceleration;
  return std::sqrt(2.0 * u * inv_sum);
}

double travel_time(std::span<const double> hops, int stops, const DroneSpec& drone,
                   KinematicsModel model) {
  double total = 0.0;
  for (double u : hops) total += hop_time(u, drone, model);
  return total + stops * drone.reconfig_time;
}

double travel_time(const Tour& tour, const DroneSpec& drone, KinematicsModel model) {
  return travel_time(tour.hop_distances, static_cast<int>(tour.order.size()), drone, model);
}

TravelApprox travel_time_approx(int M, double area_side, const DroneSpec& drone, double alpha) {
  require(M >= 1, "travel_time_approx: M must be >= 1");
  require(area_side > 0.0, "travel_time_approx: area_side must be positive");
  TravelApprox out;
  const double stop_overhead = drone.accel_time() + drone.decel_time() + drone.reconfig_time;
  out.time = (alpha * area_side - M * drone.cruise_threshold()) / drone.max_speed + M * stop_overhead;
  const double agility = drone.max_speed * drone.max_speed *
                         (1.0 / drone.acceleration + 1.0 / drone.deceleration);
  out.min_side = alpha > 0.0 ? M * agility / (2.0 * alpha) : std::numeric_limits<double>::infinity();
  out.bound_satisfied = area_side >= out.min_side;
  return out;
}

TravelApprox travel_time_approx(int M, double area_side, const DroneSpec& drone,
                                const NormalizedCoverageTable& table) {
  return travel_time_approx(M, area_side, drone, table.at(M).alpha);
}

}  // namespace hoverplan::geometry
