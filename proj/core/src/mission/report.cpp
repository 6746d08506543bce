#include "hoverplan/mission/report.hpp"

#include <nlohmann/json.hpp>

#include "hoverplan/io/csv.hpp"

namespace hoverplan::mission {

namespace {

nlohmann::json num(double v) {
  // JSON has no infinities.
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string report_json(const MissionReport& report, const std::string& config_hash, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["mission"] = to_string(report.kind);
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["area_side"] = report.area_side;
  j["K"] = report.K;
  if (report.kind == MissionKind::Aggregation) j["zeta"] = report.zeta;
  else j["delta"] = report.delta;
  j["feasible"] = report.feasible();
  j["M_star"] = report.M_star();
  if (report.feasible()) {
    const auto& o = report.optimum();
    j["T_total"] = o.total;
    j["beta"] = o.beta;
    j["aloha"] = o.aloha;
    if (report.kind == MissionKind::Estimation) {
      j["R_mse"] = o.R_mse;
      j["J_star"] = o.J_star;
    }
  }
  auto& records = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json rec;
    rec["M"] = r.M;
    rec["feasible"] = r.feasible;
    if (!r.note.empty()) rec["note"] = r.note;
    rec["R"] = r.radius;
    rec["h"] = r.altitude;
    rec["beta"] = r.beta;
    rec["aloha"] = r.aloha;
    rec["P_s"] = r.success;
    rec["slot_time"] = r.slot_time;
    rec["slots_per_location"] = num(r.slots);
    rec["T_hover_per_location"] = num(r.hover_per_location);
    rec["T_hover"] = num(r.hover_total);
    rec["T_travel"] = r.travel;
    rec["T_total"] = num(r.total);
    if (report.kind == MissionKind::Estimation) {
      rec["R_mse"] = r.R_mse;
      rec["rho"] = r.rho;
      rec["P_e_s"] = r.edge_success;
      rec["J_star"] = r.J_star;
    }
    auto& centers = rec["centers"] = nlohmann::ordered_json::array();
    for (const auto& c : r.centers) centers.push_back({c.x, c.y});
    if (!r.uavs.empty()) {
      rec["bottleneck"] = r.bottleneck;
      auto& uavs = rec["uavs"] = nlohmann::ordered_json::array();
      for (const auto& u : r.uavs) {
        uavs.push_back({{"depot", u.depot}, {"order", u.order}, {"T_travel", u.travel}, {"T_hover", u.hover},
                        {"T_total", u.total}});
      }
    }
    records.push_back(std::move(rec));
  }
  return j.dump(2) + "\n";
}

void write_report_csv(std::ostream& out, const MissionReport& report, const std::string& config_hash,
                      std::uint64_t seed) {
  io::CsvWriter csv(out, config_hash, seed,
                    {"M", "feasible", "R", "h", "beta", "a", "P_s", "slots", "T_hover", "T_travel", "T_total",
                     "R_mse", "rho", "J_star"});
  using io::format_number;
  for (const auto& r : report.records) {
    csv.row({std::to_string(r.M), r.feasible ? "1" : "0", format_number(r.radius), format_number(r.altitude),
             format_number(r.beta), format_number(r.aloha), format_number(r.success), format_number(r.slots),
             format_number(r.hover_total), format_number(r.travel), format_number(r.total), format_number(r.R_mse),
             format_number(r.rho), std::to_string(r.J_star)});
  }
}

}  // namespace hoverplan::mission
