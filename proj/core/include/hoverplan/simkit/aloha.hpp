#pragma once

#include <span>
#include <vector>

#include "hoverplan/channel/radio.hpp"
#include "hoverplan/simkit/ppp.hpp"

namespace hoverplan::simkit {

struct SlotOutcome {
  bool success = false;
  int winner = -1;             // index into the node list, -1 if none
  int active = 0;              // transmitting nodes
  int above_threshold = 0;     // nodes with SINR >= beta
  double max_sinr = 0.0;
  std::vector<int> transmitters;
  std::vector<double> sinr;    // per transmitter
};

// One slotted-ALOHA round at a drone hovering at `hl` (ground projection)
// and altitude geom.altitude. Each node transmits with probability a; power
// gains are Gamma(m, 1/m); the node with the largest SINR is decoded if its
// SINR reaches beta.
SlotOutcome run_aloha_slot(std::span<const Point> nodes, const Point& hl, const channel::HoverGeometry& geom,
                           const channel::RadioSpec& radio, Rng& rng);
SlotOutcome run_aloha_slot(std::span<const Point> nodes, const channel::HoverGeometry& geom,
                           const channel::RadioSpec& radio, std::uint64_t seed);

}  // namespace hoverplan::simkit
