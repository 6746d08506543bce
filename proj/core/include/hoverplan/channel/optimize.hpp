#pragma once

#include <functional>
#include <limits>

#include "hoverplan/channel/success.hpp"

namespace hoverplan::channel {

// Golden-section maximization of a unimodal f on [lo, hi] to width `tol`.
// The endpoints are also compared, so monotone functions return an endpoint.
struct Maximum {
  double x = 0.0;
  double value = 0.0;
};
Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol);

// ALOHA probability maximizing the success probability. Searched on log a
// over [1e-6, 1] to a relative width of `tol`; returns 1 when the disk holds
// at most one node on average.
double optimal_aloha(const HoverGeometry& geom, const RadioSpec& radio, double tol = 1e-4);

enum class BetaObjective {
  Aggregation,  // report seconds per collected sample, tau / P_s
  Throughput,   // report P_s log2(1 + beta)
};

struct BetaSearchOptions {
  double beta_max = 20.0;
  double tol = 1e-4;           // width on log(beta)
  bool optimize_aloha = true;  // re-optimize a for every candidate beta
  BetaObjective objective = BetaObjective::Aggregation;
};

struct BetaOptimum {
  double beta = 1.0;
  double aloha = 0.0;
  double success = 0.0;      // P_s at (beta, aloha)
  double throughput = 0.0;   // P_s log2(1 + beta)
  double objective = 0.0;    // per BetaObjective
};

// SINR threshold minimizing the per-sample hovering time, i.e. maximizing
// P_s(beta) log2(1 + beta), by golden section on log(beta) over [1, beta_max].
BetaOptimum optimal_beta(const HoverGeometry& geom, const RadioSpec& radio, const BetaSearchOptions& options = {});

// Same search for an arbitrary success model P_s(beta).
double maximize_rate(const std::function<double(double)>& success_of_beta, double beta_max, double tol = 1e-4);

// Slot length sized to one packet at rate log2(1 + beta): S / (B log2(1 + beta)).
double slot_duration(const RadioSpec& radio);

struct HoverTime {
  double slots = 0.0;      // J (real-valued average-count target)
  double slot_time = 0.0;  // tau
  double time = 0.0;       // J tau
  bool feasible = true;    // false when P_s = 0 (time is +inf)
};

// Hovering needed at one of M locations to collect zeta / M samples on average.
HoverTime hover_time_aggregation(int M, double zeta, double success, const RadioSpec& radio);
HoverTime hover_time_aggregation(int M, double zeta, const HoverGeometry& geom, const RadioSpec& radio);

}  // namespace hoverplan::channel
