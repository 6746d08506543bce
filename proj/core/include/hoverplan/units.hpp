#pragma once

#include <string>
#include <string_view>

namespace hoverplan::units {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

inline constexpr double kKmhToMps = 1000.0 / 3600.0;
inline constexpr double kBitsPerKilobyte = 8.0 * 1024.0;

enum class Dimension { Power, Speed, Acceleration, Data, Frequency, Time, Length, Angle, Dimensionless };

// Parses "<number> <unit>" into the SI value for the given dimension.
// Accepted units:
//   Power         W, mW, dBm, dBW
//   Speed         m/s, km/h
//   Acceleration  m/s^2, km/h/s, km/h^2
//   Data          bit, B, KB, MB  (KB = 1024 bytes)
//   Frequency     Hz, KHz, kHz, MHz
//   Time          s, ms, min
//   Length        m, km
//   Angle         deg, rad
// A bare number is taken as already in SI. Throws InvalidArgument otherwise.
double parse_quantity(std::string_view text, Dimension dim);

// Formats an SI value in the requested unit with the shortest representation
// that round-trips through parse_quantity ("-30 dBm", "200 KHz", ...).
std::string format_quantity(double value_si, std::string_view unit);

}  // namespace hoverplan::units
