#pragma once

#include <array>
#include <map>
#include <mutex>
#include <vector>

#include "hoverplan/channel/radio.hpp"
#include "hoverplan/quadrature.hpp"

namespace hoverplan::channel {

// Laplace transform of the normalized interference-plus-noise power seen by
// the drone, and its derivatives in s.
//
// With c(r) = r^-eta and the ALOHA-thinned PPP over the disk,
//   log L(s) = -s sigma_n^2 / P - 2 pi lambda a Int_h^d (1 - (1 + s c / m)^-m) r dr
// and L^(k) follows from the derivatives of log L through
//   L^(n) = sum_{j<n} C(n-1, j) g^(n-j) L^(j).
//
// One evaluator memoizes g^(j)(s) per abscissa; it is safe to share across
// threads.
class InterferenceLaplace {
 public:
  InterferenceLaplace(const HoverGeometry& geom, const RadioSpec& radio, quad::Options quad = {});

  double value(double s) const;
  // L^(k)(s) for k = 0..max_order; max_order < m.
  std::vector<double> derivatives(double s, int max_order) const;
  double derivative(int k, double s) const;

  // Probability that a node at slant range r is decoded:
  //   sum_{k<m} (-s)^k / k! L^(k)(s),  s = m beta r^eta.
  double conditional_success(double r) const;

  const HoverGeometry& geometry() const { return geom_; }
  const RadioSpec& radio() const { return radio_; }

 private:
  using LogDerivs = std::array<double, kMaxNakagamiM>;
  const LogDerivs& log_derivatives(double s) const;
  LogDerivs compute_log_derivatives(double s) const;

  HoverGeometry geom_;
  RadioSpec radio_;
  quad::Options quad_;
  mutable std::mutex cache_mutex_;
  mutable std::map<double, LogDerivs> cache_;
};

double laplace_interference(double s, const HoverGeometry& geom, const RadioSpec& radio);
double laplace_derivative(int k, double s, const HoverGeometry& geom, const RadioSpec& radio);

}  // namespace hoverplan::channel
