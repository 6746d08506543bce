#pragma once

#include <vector>

#include "hoverplan/channel/laplace.hpp"

namespace hoverplan::channel {

// Probability that a slot delivers one sample from the hovering disk under
// max-SINR capture (beta >= 1 makes the per-node success events disjoint):
//   P_s = 2 pi lambda a Int_h^d p(r) r dr,  p(r) = InterferenceLaplace::conditional_success.
double success_probability(const HoverGeometry& geom, const RadioSpec& radio);
double success_probability(const InterferenceLaplace& laplace);

// Angular measure of the circle of radius w (centred on the hovering-disk
// centre) that falls inside the probe disk of radius R_mse centred on the
// disk edge.
double lens_angle(double w, double R, double R_mse);

// Probability that a slot delivers a sample originating in the intersection
// of the hovering disk and the edge probe disk of radius R_mse.
double edge_success_probability(const HoverGeometry& geom, const RadioSpec& radio, double R_mse);
double edge_success_probability(const InterferenceLaplace& laplace, double R_mse);

// Chebyshev interpolant of the conditional success p(r) over [h, d]. The
// degree doubles until the interpolant matches direct evaluation at the
// interleaved midpoints within `tol`; repeated lens integrals then cost
// nothing beyond polynomial evaluation.
class SuccessProfile {
 public:
  explicit SuccessProfile(const InterferenceLaplace& laplace, double tol = 1e-8);

  double operator()(double r) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double max_error() const { return max_error_; }
  const HoverGeometry& geometry() const { return geom_; }
  const RadioSpec& radio() const { return radio_; }

 private:
  HoverGeometry geom_;
  RadioSpec radio_;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> coeffs_;
  double max_error_ = 0.0;
};

double edge_success_probability(const SuccessProfile& profile, double R_mse);

}  // namespace hoverplan::channel
