#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hoverplan/channel/radio.hpp"
#include "hoverplan/field/covariance.hpp"
#include "hoverplan/simkit/ppp.hpp"

namespace hoverplan::simkit {

struct SimConfig {
  std::uint64_t seed = 1;
  long long slots = 100000;  // per replication
  int replications = 1;
  channel::HoverGeometry geom;
  channel::RadioSpec radio;
  field::CovarianceSpec cov;
  int threads = 1;
  int radial_bins = 10;
  // Probe-disk radius for edge (lens) success counting; 0 disables it.
  double edge_radius = 0.0;
  std::size_t max_position_samples = 2000;
  // Gzipped per-slot records; empty disables.
  std::string raw_csv;

  void validate() const;
};

struct SimStats {
  long long trials = 0;
  long long successes = 0;
  double success_probability = 0.0;
  double success_se = 0.0;

  long long edge_successes = 0;
  double edge_probability = 0.0;
  double edge_se = 0.0;

  // Slots where more than one transmitter cleared the threshold.
  long long multi_capture_slots = 0;

  // Successes binned by ground distance from the hovering location.
  std::vector<double> radial_edges;
  std::vector<long long> radial_counts;
  std::vector<Point> success_positions;  // first max_position_samples winners

  // Edge MSE experiments: per-replication squared error and posterior variance
  // at the probe point.
  std::vector<double> squared_errors;
  std::vector<double> posterior_variances;
  double mse_mean = 0.0;
  double mse_se = 0.0;
  double posterior_mean = 0.0;

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

inline double binomial_se(double p, long long n) { return n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0; }

// Slots at one hovering location, each with a fresh node deployment, fading
// and access draw. Only the transmitting subset matters, so it is drawn
// directly as a PPP of density a * lambda.
SimStats estimate_success_probability(const SimConfig& config);

// Per replication: deploy nodes on the disk, run J slots, krige the field at
// the edge probe point (R, 0) from the successfully received samples.
SimStats estimate_edge_mse(const SimConfig& config, double R_mse, int J);

struct MissionSimConfig {
  std::uint64_t seed = 1;
  int replications = 200;
  std::vector<Point> centers;
  double radius = 0.0;
  double altitude = 0.0;
  double area_side = 100.0;
  double density = 0.1;
  channel::RadioSpec radio;
  field::CovarianceSpec cov;
  int slots_per_location = 1;
  int probes = 20;
  int threads = 1;
};

struct MissionSimStats {
  std::vector<Point> probes;
  // Per replication, mean over probes.
  std::vector<double> posterior_mse;
  std::vector<double> squared_error;
  std::vector<int> observations;
  double fraction_within(double delta) const;
};

// `count` probe points on the boundaries of the hovering circles, inside the field.
std::vector<Point> edge_probes(const std::vector<Point>& centers, double radius, double area_side, int count);

// Whole estimation mission: nodes over the square field, J slots at every
// hovering location (nodes inside that disk contend), kriging at the edge probes.
MissionSimStats simulate_estimation_mission(const MissionSimConfig& config);

}  // namespace hoverplan::simkit
