#include "hoverplan/channel/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "hoverplan/types.hpp"

namespace hoverplan::channel {

void RadioSpec::validate() const {
  require(tx_power > 0.0, "RadioSpec: tx_power must be positive");
  require(noise_power >= 0.0, "RadioSpec: noise_power must be non-negative");
  require(path_loss_exponent > 2.0, "RadioSpec: path-loss exponent must exceed 2");
  require(nakagami_m >= 1 && nakagami_m <= kMaxNakagamiM,
          "RadioSpec: Nakagami m must be an integer in [1, 16]");
  require(bandwidth > 0.0, "RadioSpec: bandwidth must be positive");
  require(packet_bits > 0.0, "RadioSpec: packet size must be positive");
  require(sinr_threshold >= 1.0, "RadioSpec: SINR threshold must be >= 1");
  require(aloha_probability >= 0.0 && aloha_probability <= 1.0,
          "RadioSpec: ALOHA probability must be in [0, 1]");
}

HoverGeometry HoverGeometry::make(double radius, double altitude, double density) {
  HoverGeometry g{radius, altitude, density};
  g.validate();
  return g;
}

void HoverGeometry::validate() const {
  require(radius > 0.0, "HoverGeometry: radius must be positive");
  require(altitude > 0.0, "HoverGeometry: altitude must be positive");
  require(density >= 0.0, "HoverGeometry: density must be non-negative");
}

double HoverGeometry::mean_nodes() const { return density * kPi * radius * radius; }

InterferenceLaplace::InterferenceLaplace(const HoverGeometry& geom, const RadioSpec& radio, quad::Options quad)
    : geom_(geom), radio_(radio), quad_(quad) {
  geom_.validate();
  radio_.validate();
}

InterferenceLaplace::LogDerivs InterferenceLaplace::compute_log_derivatives(double s) const {
  LogDerivs g{};
  const int m = radio_.nakagami_m;
  const double eta = radio_.path_loss_exponent;
  const double noise = radio_.normalized_noise();
  const double weight = 2.0 * kPi * geom_.density * radio_.aloha_probability;
  const double h = geom_.altitude;
  const double d = geom_.slant_range();

  g[0] = -s * noise;
  if (m > 1) g[1] = -noise;
  if (weight == 0.0) return g;

  // 1 - (1 + x)^-m with x = s r^-eta / m, kept accurate for tiny x.
  const auto base = [&](double r) {
    const double x = s * std::pow(r, -eta) / m;
    return -std::expm1(-m * std::log1p(x)) * r;
  };
  g[0] -= weight * quad::integrate(base, h, d, quad_);

  double rising = 1.0;  // m (m+1) ... (m+j-1)
  for (int j = 1; j < m; ++j) {
    rising *= (m + j - 1);
    const auto deriv = [&](double r) {
      const double c = std::pow(r, -eta) / m;
      const double x = s * c;
      return std::pow(c, j) * std::exp(-(m + j) * std::log1p(x)) * r;
    };
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    g[static_cast<std::size_t>(j)] += weight * sign * rising * quad::integrate(deriv, h, d, quad_);
  }
  return g;
}

const InterferenceLaplace::LogDerivs& InterferenceLaplace::log_derivatives(double s) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(s); it != cache_.end()) return it->second;
  }
  LogDerivs g = compute_log_derivatives(s);
  std::lock_guard lock(cache_mutex_);
  return cache_.emplace(s, g).first->second;
}

std::vector<double> InterferenceLaplace::derivatives(double s, int max_order) const {
  require(s >= 0.0, "InterferenceLaplace: s must be non-negative");
  require(max_order >= 0 && max_order < radio_.nakagami_m,
          "InterferenceLaplace: derivative order must be below the Nakagami m");
  const LogDerivs& g = log_derivatives(s);
  std::vector<double> L(static_cast<std::size_t>(max_order) + 1, 0.0);
  L[0] = std::exp(g[0]);
  for (int n = 1; n <= max_order; ++n) {
    double sum = 0.0;
    double binom = 1.0;  // C(n-1, j)
    for (int j = 0; j < n; ++j) {
      sum += binom * g[static_cast<std::size_t>(n - j)] * L[static_cast<std::size_t>(j)];
      binom = binom * (n - 1 - j) / (j + 1);
    }
    L[static_cast<std::size_t>(n)] = sum;
  }
  return L;
}

double InterferenceLaplace::value(double s) const { return derivatives(s, 0)[0]; }

double InterferenceLaplace::derivative(int k, double s) const {
  return derivatives(s, k)[static_cast<std::size_t>(k)];
}

double InterferenceLaplace::conditional_success(double r) const {
  const int m = radio_.nakagami_m;
  const double s = m * radio_.sinr_threshold * std::pow(r, radio_.path_loss_exponent);
  const auto L = derivatives(s, m - 1);
  double sum = 0.0;
  double term = 1.0;  // (-s)^k / k!
  for (int k = 0; k < m; ++k) {
    sum += term * L[static_cast<std::size_t>(k)];
    term *= -s / (k + 1);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double laplace_interference(double s, const HoverGeometry& geom, const RadioSpec& radio) {
  return InterferenceLaplace(geom, radio).value(s);
}

double laplace_derivative(int k, double s, const HoverGeometry& geom, const RadioSpec& radio) {
  require(k >= 0 && k < radio.nakagami_m, "laplace_derivative: order must satisfy 0 <= k < m");
  return InterferenceLaplace(geom, radio).derivative(k, s);
}

}  // namespace hoverplan::channel
