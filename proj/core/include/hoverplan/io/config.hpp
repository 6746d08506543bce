#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hoverplan/channel/radio.hpp"
#include "hoverplan/geometry/kinematics.hpp"
#include "hoverplan/mission/planner.hpp"

namespace hoverplan::io {

// Everything a run needs. Defaults are the standard system parameters, so an
// empty config file plans the default aggregation mission.
//
// File format: one "key = value" per line, '#' starts a comment. Values with
// physical dimension accept a unit suffix ("-30 dBm", "20 km/h", "5 KB").
// Keys:
//   mission            aggregation | estimation
//   field.side         length           field.density   nodes per m^2
//   cov.sigma2, cov.nu, cov.range (length)
//   drone.speed        speed            drone.accel, drone.decel  acceleration
//   drone.reconfig     time             drone.beamwidth angle
//   radio.power, radio.noise  power     radio.eta, radio.m
//   radio.bandwidth    frequency        radio.packet    data size
//   radio.beta, radio.aloha             (starting / fixed values)
//   zeta, delta        mission target (the one matching `mission` is used)
//   M.min, M.max, K, seed, stop_after
//   depots             "x y; x y; ..." in metres (empty: field centre)
//   fixed_beta, fixed_aloha   pin beta or a instead of optimizing
//   round_up           true | false
//   kinematics         continuous | paper-literal
//   coverage.restarts, coverage.hops
//   out                output root directory
struct RunConfig {
  mission::MissionKind kind = mission::MissionKind::Aggregation;
  mission::FieldSpec field;
  geometry::DroneSpec drone;
  channel::RadioSpec radio;
  double zeta = 250.0;
  double delta = 0.2;
  int M_min = 1;
  int M_max = 30;
  int K = 1;
  std::vector<Point> depots;
  std::uint64_t seed = 1;
  int stop_after = 3;
  std::optional<double> fixed_beta;
  std::optional<double> fixed_aloha;
  bool round_up = false;
  geometry::KinematicsModel kinematics = geometry::KinematicsModel::Continuous;
  int coverage_restarts = 50;
  int coverage_hops = 30;
  std::string out_root = "out";

  // Sets one key from its textual value; throws InvalidArgument on unknown
  // keys or malformed values.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  // Stable "key=value" listing of every setting (SI, shortest round-trip numbers).
  std::string canonical() const;
  // 16 hex digits, FNV-1a over canonical().
  std::string hash() const;

  mission::PlanOptions plan_options() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace hoverplan::io
