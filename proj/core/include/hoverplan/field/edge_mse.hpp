#pragma once

#include "hoverplan/channel/success.hpp"
#include "hoverplan/field/covariance.hpp"

namespace hoverplan::field {

struct EdgeMseBound {
  double value = 0.0;
  bool clamped = false;            // the raw expression was negative
  bool non_unit_variance = false;  // derived for sigma2 = 1 only
};

// Upper bound on the average kriging MSE at the hovering-disk edge for the
// exponential covariance:
//   sigma2 P_ns + (1 - P_ns)(sigma2 - exp(-2 R_mse / b) / sigma2), clamped at 0.
EdgeMseBound edge_mse_bound(double P_ns, double R_mse, const CovarianceSpec& spec);

// Probability that no sample from the probe disk arrives in J slots:
// (1 - P_e^s)^(J / rho).
double no_success_probability(double P_e_s, double J, double rho);

// Area of the intersection of the hovering disk (radius R) and the probe
// disk (radius R_mse) centred on its edge.
double lens_area(double R, double R_mse);

// rho = |A_int| / (pi R_mse^2), from the angular lens measure.
double area_ratio_rho(double R, double R_mse);

// Upper end of the admissible probe radius: (b/2) ln(1 / ((sigma2 - delta) sigma2)).
double mse_radius_limit(const CovarianceSpec& spec, double delta);

struct MseBudget {
  bool feasible = false;
  double delta = 0.0;
  double R_mse = 0.0;
  double rho = 0.0;
  double P_e_s = 0.0;
  double J_real = 0.0;  // before the ceiling
  int J_star = 0;
  double slot_time = 0.0;
  double hover_time = 0.0;  // J_star * slot_time
  double radius_limit = 0.0;
};

// Real-valued slot requirement at one probe radius:
//   rho ln[1 + (delta - sigma2) sigma2 exp(2 R_mse / b)] / ln(1 - P_e^s).
// +inf when P_e^s = 0 or R_mse is outside the admissible interval.
struct SlotsAtRadius {
  double J_real = 0.0;
  double rho = 0.0;
  double P_e_s = 0.0;
};
SlotsAtRadius slots_at_radius(const channel::SuccessProfile& profile, const CovarianceSpec& spec, double delta,
                              double R_mse);

struct SlotSearchOptions {
  int grid_points = 64;
  double tol = 1e-3;  // relative width of the golden refinement
};

// Minimal per-location slot count guaranteeing the edge MSE bound <= delta,
// searched over R_mse. Beta and a are taken from the radio as given.
MseBudget optimal_slots_estimation(const channel::HoverGeometry& geom, const channel::RadioSpec& radio,
                                   const CovarianceSpec& spec, double delta, const SlotSearchOptions& options = {});
MseBudget optimal_slots_estimation(const channel::InterferenceLaplace& laplace, const CovarianceSpec& spec,
                                   double delta, const SlotSearchOptions& options = {});

// Expected number of received observations over the field:
// P_s J* |A| / (pi R^2).
double required_total_observations(const channel::HoverGeometry& geom, const channel::RadioSpec& radio, int J_star,
                                   double area_side);

}  // namespace hoverplan::field
