#include "hoverplan/units.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "hoverplan/types.hpp"

namespace hoverplan::units {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  require(watts > 0.0, "watts_to_dbm: power must be positive");
  return 10.0 * std::log10(watts) + 30.0;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// U+2212 MINUS SIGN is accepted in place of '-'.
std::string normalize_minus(std::string s) {
  const std::string minus = "\xE2\x88\x92";
  for (auto pos = s.find(minus); pos != std::string::npos; pos = s.find(minus)) {
    s.replace(pos, minus.size(), "-");
  }
  return s;
}

struct UnitFactor {
  std::string_view name;
  Dimension dim;
  double scale;  // SI = value * scale (except logarithmic units)
};

constexpr double kKmh = 1000.0 / 3600.0;

constexpr UnitFactor kUnits[] = {
    {"W", Dimension::Power, 1.0},
    {"mW", Dimension::Power, 1e-3},
    {"m/s", Dimension::Speed, 1.0},
    {"km/h", Dimension::Speed, kKmh},
    {"m/s^2", Dimension::Acceleration, 1.0},
    {"km/h/s", Dimension::Acceleration, kKmh},
    {"km/h^2", Dimension::Acceleration, 1000.0 / (3600.0 * 3600.0)},
    {"bit", Dimension::Data, 1.0},
    {"bits", Dimension::Data, 1.0},
    {"B", Dimension::Data, 8.0},
    {"KB", Dimension::Data, 8.0 * 1024.0},
    {"MB", Dimension::Data, 8.0 * 1024.0 * 1024.0},
    {"Hz", Dimension::Frequency, 1.0},
    {"KHz", Dimension::Frequency, 1e3},
    {"kHz", Dimension::Frequency, 1e3},
    {"MHz", Dimension::Frequency, 1e6},
    {"s", Dimension::Time, 1.0},
    {"ms", Dimension::Time, 1e-3},
    {"min", Dimension::Time, 60.0},
    {"m", Dimension::Length, 1.0},
    {"km", Dimension::Length, 1e3},
    {"deg", Dimension::Angle, kPi / 180.0},
    {"rad", Dimension::Angle, 1.0},
};

const UnitFactor* find_unit(std::string_view name) {
  for (const auto& u : kUnits) {
    if (u.name == name) return &u;
  }
  return nullptr;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
  const std::string s = normalize_minus(trim(text));
  require(!s.empty(), "parse_quantity: empty value");

  double number = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, number);
  require(ec == std::errc{}, "parse_quantity: no number in '" + s + "'");
  const std::string unit = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
  if (unit.empty()) return number;

  if (dim == Dimension::Power && unit == "dBm") return dbm_to_watts(number);
  if (dim == Dimension::Power && unit == "dBW") return dbm_to_watts(number + 30.0);

  const UnitFactor* u = find_unit(unit);
  require(u != nullptr, "parse_quantity: unknown unit '" + unit + "'");
  require(u->dim == dim, "parse_quantity: unit '" + unit + "' has the wrong dimension");
  return number * u->scale;
}

std::string format_quantity(double value_si, std::string_view unit) {
  double value = 0.0;
  if (unit == "dBm") {
    value = watts_to_dbm(value_si);
  } else if (unit == "dBW") {
    value = watts_to_dbm(value_si) - 30.0;
  } else {
    const UnitFactor* u = find_unit(unit);
    require(u != nullptr, "format_quantity: unknown unit '" + std::string(unit) + "'");
    value = value_si / u->scale;
  }
  // Twelve significant digits drop dB/scale conversion noise; the shortest
  // round-trip form of what remains is the text.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  double rounded = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), rounded);
  const auto end = std::to_chars(buf, buf + sizeof buf - 1, rounded).ptr;
  *end = '\0';
  return std::string(buf) + " " + std::string(unit);
}

}  // namespace hoverplan::units
