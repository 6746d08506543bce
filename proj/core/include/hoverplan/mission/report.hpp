#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "hoverplan/mission/planner.hpp"

namespace hoverplan::mission {

// Full report as indented JSON (records in M order, UAV breakdown included).
std::string report_json(const MissionReport& report, const std::string& config_hash, std::uint64_t seed);

// One row per evaluated M: M,feasible,R,h,beta,a,P_s,slots,T_hover,T_travel,T_total,R_mse,rho,J_star.
void write_report_csv(std::ostream& out, const MissionReport& report, const std::string& config_hash,
                      std::uint64_t seed);

}  // namespace hoverplan::mission
