#pragma once

#include <span>

#include "hoverplan/types.hpp"

namespace hoverplan::field {

// Isotropic Matern covariance of a zero-mean Gaussian field.
struct CovarianceSpec {
  double sigma2 = 1.0;  // variance
  double nu = 0.5;      // smoothness; 0.5 is the exponential model
  double range = 75.0;  // b [m]

  void validate() const;
  bool exponential() const { return nu == 0.5; }
};

// sigma2 / (Gamma(nu) 2^(nu-1)) (d/b)^nu K_nu(d/b); sigma2 at d = 0.
double covariance(const CovarianceSpec& spec, double dist);
inline double covariance(const CovarianceSpec& spec, const Point& a, const Point& b) {
  return covariance(spec, distance(a, b));
}

// Diagonal jitter added before every factorization.
inline double jitter(const CovarianceSpec& spec) { return 1e-10 * spec.sigma2; }

}  // namespace hoverplan::field
