#include "hoverplan/io/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hoverplan/io/csv.hpp"
#include "hoverplan/units.hpp"

namespace hoverplan::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double number(const std::string& key, const std::string& v, units::Dimension dim = units::Dimension::Dimensionless) {
  try {
    return units::parse_quantity(v, dim);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument("config key '" + key + "': " + e.what());
  }
}

int integer(const std::string& key, const std::string& v) {
  const double x = number(key, v);
  require(x == static_cast<int>(x), "config key '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

bool boolean(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidArgument("config key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<Point> points(const std::string& key, const std::string& v) {
  std::vector<Point> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    std::istringstream is(item);
    Point p;
    char comma = 0;
    if (!(is >> p.x)) throw InvalidArgument("config key '" + key + "': bad point '" + item + "'");
    if (is.peek() == ',') is >> comma;
    if (!(is >> p.y)) throw InvalidArgument("config key '" + key + "': bad point '" + item + "'");
    out.push_back(p);
  }
  return out;
}

}  // namespace

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  using units::Dimension;
  const std::string key = trim(raw_key);
  const std::string v = trim(raw_value);
  if (key == "mission") {
    if (v == "aggregation") kind = mission::MissionKind::Aggregation;
    else if (v == "estimation") kind = mission::MissionKind::Estimation;
    else throw InvalidArgument("config key 'mission': expected aggregation or estimation, got '" + v + "'");
  } else if (key == "field.side") field.side = number(key, v, Dimension::Length);
  else if (key == "field.density") field.density = number(key, v);
  else if (key == "cov.sigma2") field.cov.sigma2 = number(key, v);
  else if (key == "cov.nu") field.cov.nu = number(key, v);
  else if (key == "cov.range") field.cov.range = number(key, v, Dimension::Length);
  else if (key == "drone.speed") drone.max_speed = number(key, v, Dimension::Speed);
  else if (key == "drone.accel") drone.acceleration = number(key, v, Dimension::Acceleration);
  else if (key == "drone.decel") drone.deceleration = number(key, v, Dimension::Acceleration);
  else if (key == "drone.reconfig") drone.reconfig_time = number(key, v, Dimension::Time);
  else if (key == "drone.beamwidth") drone.beamwidth = number(key, v, Dimension::Angle);
  else if (key == "radio.power") radio.tx_power = number(key, v, Dimension::Power);
  else if (key == "radio.noise") radio.noise_power = number(key, v, Dimension::Power);
  else if (key == "radio.eta") radio.path_loss_exponent = number(key, v);
  else if (key == "radio.m") radio.nakagami_m = integer(key, v);
  else if (key == "radio.bandwidth") radio.bandwidth = number(key, v, Dimension::Frequency);
  else if (key == "radio.packet") radio.packet_bits = number(key, v, Dimension::Data);
  else if (key == "radio.beta") radio.sinr_threshold = number(key, v);
  else if (key == "radio.aloha") radio.aloha_probability = number(key, v);
  else if (key == "zeta") zeta = number(key, v);
  else if (key == "delta") delta = number(key, v);
  else if (key == "M.min") M_min = integer(key, v);
  else if (key == "M.max") M_max = integer(key, v);
  else if (key == "K") K = integer(key, v);
  else if (key == "seed") {
    const double s = number(key, v);
    require(s >= 0 && s == static_cast<double>(static_cast<std::uint64_t>(s)), "config key 'seed': expected a non-negative integer");
    seed = static_cast<std::uint64_t>(s);
  } else if (key == "stop_after") stop_after = integer(key, v);
  else if (key == "depots") depots = points(key, v);
  else if (key == "fixed_beta") fixed_beta = v.empty() ? std::nullopt : std::optional(number(key, v));
  else if (key == "fixed_aloha") fixed_aloha = v.empty() ? std::nullopt : std::optional(number(key, v));
  else if (key == "round_up") round_up = boolean(key, v);
  else if (key == "kinematics") {
    if (v == "continuous") kinematics = geometry::KinematicsModel::Continuous;
    else if (v == "paper-literal") kinematics = geometry::KinematicsModel::PaperLiteral;
    else throw InvalidArgument("config key 'kinematics': expected continuous or paper-literal");
  } else if (key == "coverage.restarts") coverage_restarts = integer(key, v);
  else if (key == "coverage.hops") coverage_hops = integer(key, v);
  else if (key == "out") out_root = v;
  else throw InvalidArgument("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  field.validate();
  drone.validate();
  radio.validate();
  plan_options().validate();
  if (kind == mission::MissionKind::Aggregation) {
    require(zeta >= 0.0, "config: zeta must be non-negative");
  } else {
    require(delta > 0.0 && delta < field.cov.sigma2, "config: delta must lie in (0, cov.sigma2)");
  }
  require(coverage_restarts >= 1 && coverage_hops >= 0, "config: coverage search sizes must be positive");
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  const auto kv = [&](const char* k, double v) { os << k << '=' << format_number(v) << '\n'; };
  os << "mission=" << mission::to_string(kind) << '\n';
  kv("field.side", field.side);
  kv("field.density", field.density);
  kv("cov.sigma2", field.cov.sigma2);
  kv("cov.nu", field.cov.nu);
  kv("cov.range", field.cov.range);
  kv("drone.speed", drone.max_speed);
  kv("drone.accel", drone.acceleration);
  kv("drone.decel", drone.deceleration);
  kv("drone.reconfig", drone.reconfig_time);
  kv("drone.beamwidth", drone.beamwidth);
  kv("radio.power", radio.tx_power);
  kv("radio.noise", radio.noise_power);
  kv("radio.eta", radio.path_loss_exponent);
  kv("radio.m", radio.nakagami_m);
  kv("radio.bandwidth", radio.bandwidth);
  kv("radio.packet", radio.packet_bits);
  kv("radio.beta", radio.sinr_threshold);
  kv("radio.aloha", radio.aloha_probability);
  if (kind == mission::MissionKind::Aggregation) kv("zeta", zeta);
  else kv("delta", delta);
  kv("M.min", M_min);
  kv("M.max", M_max);
  kv("K", K);
  os << "seed=" << seed << '\n';
  kv("stop_after", stop_after);
  os << "depots=";
  for (std::size_t i = 0; i < depots.size(); ++i) {
    os << (i ? ";" : "") << format_number(depots[i].x) << ' ' << format_number(depots[i].y);
  }
  os << '\n';
  os << "fixed_beta=" << (fixed_beta ? format_number(*fixed_beta) : "") << '\n';
  os << "fixed_aloha=" << (fixed_aloha ? format_number(*fixed_aloha) : "") << '\n';
  os << "round_up=" << (round_up ? "true" : "false") << '\n';
  os << "kinematics=" << (kinematics == geometry::KinematicsModel::Continuous ? "continuous" : "paper-literal") << '\n';
  kv("coverage.restarts", coverage_restarts);
  kv("coverage.hops", coverage_hops);
  return os.str();
}

std::string RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

mission::PlanOptions RunConfig::plan_options() const {
  mission::PlanOptions o;
  o.M_min = M_min;
  o.M_max = M_max;
  o.K = K;
  o.depots = depots;
  o.fixed_beta = fixed_beta;
  o.fixed_aloha = fixed_aloha;
  o.round_up_slots = round_up;
  o.stop_after_increases = stop_after;
  o.kinematics = kinematics;
  o.seed = seed;
  o.coverage_options.restarts = coverage_restarts;
  o.coverage_options.hops_per_restart = coverage_hops;
  o.coverage_options.beamwidth = drone.beamwidth;
  return o;
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      cfg.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path.string());
  return parse_config(in);
}

}  // namespace hoverplan::io
