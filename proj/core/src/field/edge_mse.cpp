#include "hoverplan/field/edge_mse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "hoverplan/channel/optimize.hpp"
#include "hoverplan/channel/success.hpp"
#include "hoverplan/quadrature.hpp"

namespace hoverplan::field {

EdgeMseBound edge_mse_bound(double P_ns, double R_mse, const CovarianceSpec& spec) {
  spec.validate();
  require(std::abs(spec.nu - 0.5) < 1e-12, "edge_mse_bound: derived for the exponential covariance (nu = 0.5)");
  require(P_ns >= 0.0 && P_ns <= 1.0, "edge_mse_bound: P_ns must be a probability");
  require(R_mse >= 0.0, "edge_mse_bound: R_mse must be non-negative");
  const double s2 = spec.sigma2;
  const double raw = s2 * P_ns + (1.0 - P_ns) * (s2 - std::exp(-2.0 * R_mse / spec.range) / s2);
  return {std::max(raw, 0.0), raw < 0.0, s2 != 1.0};
}

double no_success_probability(double P_e_s, double J, double rho) {
  require(P_e_s >= 0.0 && P_e_s <= 1.0, "no_success_probability: P_e_s must be a probability");
  require(J >= 0.0, "no_success_probability: J must be non-negative");
  require(rho > 0.0 && rho <= 1.0, "no_success_probability: rho must be in (0, 1]");
  if (J == 0.0) return 1.0;
  if (P_e_s == 1.0) return 0.0;
  return std::exp(J / rho * std::log1p(-P_e_s));
}

double lens_area(double R, double R_mse) {
  require(R > 0.0 && R_mse > 0.0, "lens_area: radii must be positive");
  // Two circles (R, R_mse) with centre distance R.
  const double d = R;
  if (R_mse >= 2.0 * R) return kPi * R * R;
  const double a1 = std::clamp((d * d + R * R - R_mse * R_mse) / (2.0 * d * R), -1.0, 1.0);
  const double a2 = std::clamp((d * d + R_mse * R_mse - R * R) / (2.0 * d * R_mse), -1.0, 1.0);
  const double k = (-d + R + R_mse) * (d + R - R_mse) * (d - R + R_mse) * (d + R + R_mse);
  return R * R * std::acos(a1) + R_mse * R_mse * std::acos(a2) - 0.5 * std::sqrt(std::max(k, 0.0));
}

double area_ratio_rho(double R, double R_mse) {
  require(R > 0.0 && R_mse > 0.0, "area_ratio_rho: radii must be positive");
  std::vector<double> breaks{0.0};
  for (double b : {std::abs(R_mse - R), R_mse + R}) {
    if (b > 0.0 && b < R) breaks.push_back(b);
  }
  breaks.push_back(R);
  std::sort(breaks.begin(), breaks.end());
  // theta has square-root endpoints at the breakpoints; w = a + (b - a)(1 - cos t)/2
  // smooths them out on every piece.
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], span = breaks[i + 1] - a;
    if (span <= 0.0) continue;
    area += quad::integrate(
        [&](double t) {
          const double w = a + 0.5 * span * (1.0 - std::cos(t));
          return w * channel::lens_angle(w, R, R_mse) * 0.5 * span * std::sin(t);
        },
        0.0, kPi, {.rel_tol = 1e-12});
  }
  return area / (kPi * R_mse * R_mse);
}

double mse_radius_limit(const CovarianceSpec& spec, double delta) {
  spec.validate();
  require(delta > 0.0 && delta < spec.sigma2, "mse_radius_limit: delta must lie in (0, sigma2)");
  return 0.5 * spec.range * std::log(1.0 / ((spec.sigma2 - delta) * spec.sigma2));
}

SlotsAtRadius slots_at_radius(const channel::SuccessProfile& profile, const CovarianceSpec& spec, double delta,
                              double R_mse) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double limit = mse_radius_limit(spec, delta);
  SlotsAtRadius out;
  if (!(R_mse > 0.0 && R_mse < limit)) {
    out.J_real = inf;
    return out;
  }
  const double s2 = spec.sigma2;
  out.rho = area_ratio_rho(profile.geometry().radius, R_mse);
  out.P_e_s = channel::edge_success_probability(profile, R_mse);
  const double target = std::log1p((delta - s2) * s2 * std::exp(2.0 * R_mse / spec.range));
  if (!(out.P_e_s > 0.0) || !std::isfinite(target)) {
    out.J_real = inf;
  } else if (out.P_e_s >= 1.0) {
    out.J_real = 0.0;
  } else {
    out.J_real = out.rho * target / std::log1p(-out.P_e_s);
  }
  return out;
}

MseBudget optimal_slots_estimation(const channel::InterferenceLaplace& laplace, const CovarianceSpec& spec,
                                   double delta, const SlotSearchOptions& options) {
  require(options.grid_points >= 3, "optimal_slots_estimation: grid needs at least 3 points");
  MseBudget out;
  out.delta = delta;
  out.radius_limit = mse_radius_limit(spec, delta);
  out.slot_time = channel::slot_duration(laplace.radio());
  const channel::SuccessProfile profile(laplace);

  const int n = options.grid_points;
  const double step = out.radius_limit / (n + 1);
  std::vector<double> xs(n), js(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = step * (i + 1);
    js[i] = slots_at_radius(profile, spec, delta, xs[i]).J_real;
  }
  const auto best = static_cast<int>(std::min_element(js.begin(), js.end()) - js.begin());
  if (!std::isfinite(js[best])) return out;

  // Refine on the bracketing triple; the objective is unimodal in R_mse.
  const double lo = best > 0 ? xs[best - 1] : 0.5 * step;
  const double hi = best + 1 < n ? xs[best + 1] : out.radius_limit - 0.5 * step;
  const auto neg_j = [&](double r) { return -slots_at_radius(profile, spec, delta, r).J_real; };
  const auto refined = channel::golden_section_max(neg_j, lo, hi, options.tol * (hi - lo));
  const double R_mse = -refined.value <= js[best] ? refined.x : xs[best];

  const SlotsAtRadius at = slots_at_radius(profile, spec, delta, R_mse);
  out.feasible = true;
  out.R_mse = R_mse;
  out.rho = at.rho;
  out.P_e_s = at.P_e_s;
  out.J_real = at.J_real;
  out.J_star = std::max(1, static_cast<int>(std::ceil(at.J_real)));
  out.hover_time = out.J_star * out.slot_time;
  return out;
}

MseBudget optimal_slots_estimation(const channel::HoverGeometry& geom, const channel::RadioSpec& radio,
                                   const CovarianceSpec& spec, double delta, const SlotSearchOptions& options) {
  const channel::InterferenceLaplace laplace(geom, radio);
  return optimal_slots_estimation(laplace, spec, delta, options);
}

double required_total_observations(const channel::HoverGeometry& geom, const channel::RadioSpec& radio, int J_star,
                                   double area_side) {
  require(J_star >= 0, "required_total_observations: J_star must be non-negative");
  require(area_side > 0.0, "required_total_observations: area side must be positive");
  const double ps = channel::success_probability(geom, radio);
  return ps * J_star * area_side * area_side / (kPi * geom.radius * geom.radius);
}

}  // namespace hoverplan::field
