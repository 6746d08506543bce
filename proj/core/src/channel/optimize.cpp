#include "hoverplan/channel/optimize.hpp"

#include <cmath>

#include "hoverplan/types.hpp"

namespace hoverplan::channel {

Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  require(hi >= lo, "golden_section_max: empty bracket");
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  Maximum best = f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
  for (double edge : {lo, hi}) {
    const double v = f(edge);
    if (v > best.value) best = {edge, v};
  }
  return best;
}

double optimal_aloha(const HoverGeometry& geom, const RadioSpec& radio, double tol) {
  geom.validate();
  if (geom.mean_nodes() <= 1.0) return 1.0;
  const auto success_at = [&](double log_a) {
    RadioSpec r = radio;
    r.aloha_probability = std::exp(log_a);
    return success_probability(geom, r);
  };
  const Maximum best = golden_section_max(success_at, std::log(1e-6), 0.0, tol);
  return std::min(1.0, std::exp(best.x));
}

double slot_duration(const RadioSpec& radio) { return radio.packet_bits / (radio.bandwidth * radio.spectral_efficiency()); }

double maximize_rate(const std::function<double(double)>& success_of_beta, double beta_max, double tol) {
  require(beta_max >= 1.0, "maximize_rate: beta_max must be >= 1");
  const auto rate = [&](double log_beta) {
    const double beta = std::exp(log_beta);
    return success_of_beta(beta) * std::log2(1.0 + beta);
  };
  return std::exp(golden_section_max(rate, 0.0, std::log(beta_max), tol).x);
}

BetaOptimum optimal_beta(const HoverGeometry& geom, const RadioSpec& radio, const BetaSearchOptions& options) {
  const auto configured = [&](double beta) {
    RadioSpec r = radio;
    r.sinr_threshold = beta;
    if (options.optimize_aloha) r.aloha_probability = optimal_aloha(geom, r);
    return r;
  };
  const double beta = maximize_rate(
      [&](double b) { return success_probability(geom, configured(b)); }, options.beta_max, options.tol);

  BetaOptimum out;
  const RadioSpec best = configured(beta);
  out.beta = beta;
  out.aloha = best.aloha_probability;
  out.success = success_probability(geom, best);
  out.throughput = out.success * best.spectral_efficiency();
  out.objective = options.objective == BetaObjective::Throughput
                      ? out.throughput
                      : (out.success > 0 ? slot_duration(best) / out.success
                                         : std::numeric_limits<double>::infinity());
  return out;
}

HoverTime hover_time_aggregation(int M, double zeta, double success, const RadioSpec& radio) {
  require(M >= 1, "hover_time_aggregation: M must be >= 1");
  require(zeta >= 0.0, "hover_time_aggregation: zeta must be non-negative");
  HoverTime out;
  out.slot_time = slot_duration(radio);
  if (zeta == 0.0) return out;
  if (!(success > 0.0)) {
    out.feasible = false;
    out.slots = out.time = std::numeric_limits<double>::infinity();
    return out;
  }
  out.slots = zeta / (M * success);
  out.time = out.slots * out.slot_time;
  return out;
}

HoverTime hover_time_aggregation(int M, double zeta, const HoverGeometry& geom, const RadioSpec& radio) {
  return hover_time_aggregation(M, zeta, success_probability(geom, radio), radio);
}

}  // namespace hoverplan::channel
