#pragma once

#include <cmath>

#include "hoverplan/units.hpp"

namespace hoverplan::channel {

// Ground-to-air link and access parameters, SI units.
struct RadioSpec {
  double tx_power = units::dbm_to_watts(-30.0);  // P [W]
  double noise_power = units::dbm_to_watts(-80.0);  // sigma_n^2 [W]
  double path_loss_exponent = 3.0;                // eta, > 2
  int nakagami_m = 1;                             // positive integer
  double bandwidth = 200e3;                       // B [Hz]
  double packet_bits = 5.0 * units::kBitsPerKilobyte;  // S [bit]
  double sinr_threshold = 1.8;                    // beta >= 1
  double aloha_probability = 0.01;                // a in [0, 1]

  void validate() const;
  double normalized_noise() const { return noise_power / tx_power; }
  double spectral_efficiency() const { return std::log2(1.0 + sinr_threshold); }
};

inline constexpr int kMaxNakagamiM = 16;

// Disk served from one hovering location.
struct HoverGeometry {
  double radius = 0.0;    // R [m]
  double altitude = 0.0;  // h [m]
  double density = 0.0;   // lambda [nodes / m^2]

  static HoverGeometry make(double radius, double altitude, double density);
  void validate() const;
  double slant_range() const { return std::sqrt(altitude * altitude + radius * radius); }  // d
  double mean_nodes() const;  // lambda * pi * R^2
};

}  // namespace hoverplan::channel
