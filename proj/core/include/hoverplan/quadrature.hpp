#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace hoverplan::quad {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached rule of the given order (computed once per order, thread-safe).
const GaussLegendreRule& gauss_legendre(int order);

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int panel_order = 20;
  int max_depth = 40;
};

namespace detail {

template <class F>
double panel(const F& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

template <class F>
double refine(const F& f, double a, double b, double whole, double tol, int depth,
              const GaussLegendreRule& rule, const Options& opt) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid, rule);
  const double right = panel(f, mid, b, rule);
  const double split = left + right;
  const double diff = split - whole;
  if (!std::isfinite(diff)) return split;
  // Below a few ulps of the panel value the comparison is rounding noise.
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(split);
  if (std::abs(diff) <= std::max(tol, floor) || depth >= opt.max_depth || !(mid > a && mid < b)) {
    return split;
  }
  return refine(f, a, mid, left, 0.5 * tol, depth + 1, rule, opt) +
         refine(f, mid, b, right, 0.5 * tol, depth + 1, rule, opt);
}

}  // namespace detail

// Adaptive Gauss-Legendre quadrature with interval bisection. A panel is
// accepted when its single-panel and two-half-panel estimates agree within
// the local share of max(rel_tol * |I|, abs_tol).
template <class F>
double integrate(const F& f, double a, double b, const Options& opt = {}) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, opt);
  const auto& rule = gauss_legendre(opt.panel_order);
  const double whole = detail::panel(f, a, b, rule);
  // Coarse magnitude from a 4-panel pass sets the absolute target.
  double coarse = 0.0;
  for (int i = 0; i < 4; ++i) {
    coarse += std::abs(detail::panel(f, a + (b - a) * i / 4.0, a + (b - a) * (i + 1) / 4.0, rule));
  }
  const double tol = std::max(opt.rel_tol * coarse, opt.abs_tol);
  return detail::refine(f, a, b, whole, tol, 0, rule, opt);
}

// Integrates over consecutive breakpoints so that kinks are panel edges.
template <class F>
double integrate_piecewise(const F& f, std::span<const double> breaks, const Options& opt = {}) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) sum += integrate(f, breaks[i], breaks[i + 1], opt);
  }
  return sum;
}

}  // namespace hoverplan::quad
