#include "hoverplan/field/covariance.hpp"

#include <cmath>

namespace hoverplan::field {

void CovarianceSpec::validate() const {
  require(sigma2 > 0.0 && std::isfinite(sigma2), "covariance: sigma2 must be positive");
  require(nu > 0.0 && std::isfinite(nu), "covariance: nu must be positive");
  require(range > 0.0 && std::isfinite(range), "covariance: range b must be positive");
}

double covariance(const CovarianceSpec& spec, double dist) {
  require(dist >= 0.0, "covariance: negative distance");
  if (dist == 0.0) return spec.sigma2;
  const double x = dist / spec.range;
  // K_nu underflows long before the product matters.
  if (x > 700.0) return 0.0;
  const double scale = spec.sigma2 / (std::tgamma(spec.nu) * std::pow(2.0, spec.nu - 1.0));
  return scale * std::pow(x, spec.nu) * std::cyl_bessel_k(spec.nu, x);
}

}  // namespace hoverplan::field
