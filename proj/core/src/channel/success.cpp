#include "hoverplan/channel/success.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hoverplan/types.hpp"

namespace hoverplan::channel {

namespace {

quad::Options outer_options() {
  quad::Options opt;
  opt.rel_tol = 1e-9;
  return opt;
}

}  // namespace

double success_probability(const InterferenceLaplace& laplace) {
  const auto& geom = laplace.geometry();
  const auto& radio = laplace.radio();
  const double weight = 2.0 * kPi * geom.density * radio.aloha_probability;
  if (weight == 0.0) return 0.0;
  const auto integrand = [&](double r) { return laplace.conditional_success(r) * r; };
  const double p = weight * quad::integrate(integrand, geom.altitude, geom.slant_range(), outer_options());
  return std::clamp(p, 0.0, 1.0);
}

double success_probability(const HoverGeometry& geom, const RadioSpec& radio) {
  return success_probability(InterferenceLaplace(geom, radio));
}

double lens_angle(double w, double R, double R_mse) {
  if (R_mse > R && w <= R_mse - R) return 2.0 * kPi;
  if (w >= std::abs(R_mse - R) && w <= R_mse + R) {
    // Half-angle form of 2 acos((R^2 + w^2 - R_mse^2) / (2 R w)); the
    // factored products avoid cancellation when R_mse << R.
    const double p = std::max(0.0, (R_mse - R + w) * (R_mse + R - w));
    const double q = std::max(0.0, (R + w - R_mse) * (R + w + R_mse));
    return 4.0 * std::atan2(std::sqrt(p), std::sqrt(q));
  }
  return 0.0;
}

namespace {

template <class P>
double lens_integral(const HoverGeometry& geom, const RadioSpec& radio, double R_mse, const P& p) {
  require(R_mse > 0.0, "edge_success_probability: R_mse must be positive");
  const double weight = geom.density * radio.aloha_probability;
  if (weight == 0.0) return 0.0;

  const double R = geom.radius;
  const double h = geom.altitude;
  const double d = geom.slant_range();
  const auto slant = [h](double w) { return std::sqrt(h * h + w * w); };

  // Ground radius w in [max(0, R - R_mse), R]; lens_angle switches form at
  // |R_mse - R|, so that point is a panel edge.
  std::vector<double> breaks{slant(std::max(0.0, R - R_mse))};
  if (R_mse > R && R_mse - R < R) breaks.push_back(slant(R_mse - R));
  breaks.push_back(d);

  const auto integrand = [&](double r) {
    const double w = std::sqrt(std::max(0.0, r * r - h * h));
    const double theta = lens_angle(w, R, R_mse);
    if (theta == 0.0) return 0.0;
    return p(r) * r * theta;
  };
  const double prob = weight * quad::integrate_piecewise(integrand, breaks, outer_options());
  return std::clamp(prob, 0.0, 1.0);
}

std::vector<double> chebyshev_fit(const std::vector<double>& values) {
  // values at x_k = cos(pi (k + 1/2) / n)
  const auto n = values.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += values[k] * std::cos(kPi * j * (k + 0.5) / n);
    c[j] = 2.0 * sum / n;
  }
  c[0] *= 0.5;
  return c;
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

double edge_success_probability(const InterferenceLaplace& laplace, double R_mse) {
  return lens_integral(laplace.geometry(), laplace.radio(), R_mse,
                       [&](double r) { return laplace.conditional_success(r); });
}

double edge_success_probability(const SuccessProfile& profile, double R_mse) {
  return lens_integral(profile.geometry(), profile.radio(), R_mse, profile);
}

SuccessProfile::SuccessProfile(const InterferenceLaplace& laplace, double tol)
    : geom_(laplace.geometry()), radio_(laplace.radio()), lo_(geom_.altitude), hi_(geom_.slant_range()) {
  const auto at = [&](double x) { return laplace.conditional_success(0.5 * (hi_ + lo_) + 0.5 * (hi_ - lo_) * x); };
  for (std::size_t n = 16;; n *= 2) {
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = at(std::cos(kPi * (k + 0.5) / n));
    coeffs_ = chebyshev_fit(values);
    max_error_ = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double x = std::cos(kPi * (k + 1.0) / n);
      max_error_ = std::max(max_error_, std::abs(clenshaw(coeffs_, x) - at(x)));
    }
    if (max_error_ <= tol || n >= 1024) break;
  }
}

double SuccessProfile::operator()(double r) const {
  const double x = std::clamp((2.0 * r - lo_ - hi_) / (hi_ - lo_), -1.0, 1.0);
  return std::clamp(clenshaw(coeffs_, x), 0.0, 1.0);
}

double edge_success_probability(const HoverGeometry& geom, const RadioSpec& radio, double R_mse) {
  return edge_success_probability(InterferenceLaplace(geom, radio), R_mse);
}

}  // namespace hoverplan::channel
