#include "hoverplan/simkit/aloha.hpp"

#include <cmath>

namespace hoverplan::simkit {

SlotOutcome run_aloha_slot(std::span<const Point> nodes, const Point& hl, const channel::HoverGeometry& geom,
                           const channel::RadioSpec& radio, Rng& rng) {
  SlotOutcome out;
  std::bernoulli_distribution access(radio.aloha_probability);
  std::gamma_distribution<double> fading(radio.nakagami_m, 1.0 / radio.nakagami_m);

  std::vector<double> received;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!access(rng)) continue;
    const double g = fading(rng);
    const double slant2 = squared_distance(nodes[i], hl) + geom.altitude * geom.altitude;
    out.transmitters.push_back(static_cast<int>(i));
    received.push_back(g * std::pow(slant2, -0.5 * radio.path_loss_exponent));
  }
  out.active = static_cast<int>(received.size());
  if (received.empty()) return out;

  double total = 0.0;
  for (double p : received) total += p;
  const double noise = radio.normalized_noise();
  out.sinr.resize(received.size());
  int best = 0;
  for (std::size_t i = 0; i < received.size(); ++i) {
    out.sinr[i] = received[i] / (total - received[i] + noise);
    if (out.sinr[i] >= radio.sinr_threshold) ++out.above_threshold;
    if (out.sinr[i] > out.sinr[best]) best = static_cast<int>(i);
  }
  out.max_sinr = out.sinr[best];
  if (out.max_sinr >= radio.sinr_threshold) {
    out.success = true;
    out.winner = out.transmitters[best];
  }
  return out;
}

SlotOutcome run_aloha_slot(std::span<const Point> nodes, const channel::HoverGeometry& geom,
                           const channel::RadioSpec& radio, std::uint64_t seed) {
  Rng rng = substream(seed, 1);
  return run_aloha_slot(nodes, Point{}, geom, radio, rng);
}

}  // namespace hoverplan::simkit
