#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hoverplan/channel/laplace.hpp"
#include "hoverplan/types.hpp"
#include "hoverplan/channel/optimize.hpp"
#include "hoverplan/channel/success.hpp"

using namespace hoverplan;
using namespace hoverplan::channel;

namespace {

// Composite Simpson with n (even) panels; independent of the library's
// adaptive Gauss-Legendre.
template <class F>
double simpson(const F& f, double a, double b, int n = 4000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

HoverGeometry disk20() { return HoverGeometry::make(20.0, 20.0, 0.1); }

RadioSpec radio(int m = 1, double beta = 1.8, double a = 0.0127) {
  RadioSpec r;
  r.nakagami_m = m;
  r.sinr_threshold = beta;
  r.aloha_probability = a;
  return r;
}

// Rayleigh (m = 1) oracle: L(s) = exp(-s N - 2 pi lambda a Int s/(r^eta + s) r dr).
double rayleigh_laplace(double s, const HoverGeometry& g, const RadioSpec& r) {
  const double integral =
      simpson([&](double x) { return s / (std::pow(x, r.path_loss_exponent) + s) * x; }, g.altitude, g.slant_range());
  return std::exp(-s * r.normalized_noise() - 2.0 * kPi * g.density * r.aloha_probability * integral);
}

}  // namespace

TEST(Laplace, UnitAtZeroAndNoiseOnlyWithoutTraffic) {
  const auto g = disk20();
  EXPECT_DOUBLE_EQ(laplace_interference(0.0, g, radio()), 1.0);
  const auto quiet = radio(1, 1.8, 0.0);
  EXPECT_NEAR(laplace_interference(5e4, g, quiet), std::exp(-5e4 * quiet.normalized_noise()), 1e-15);
}

TEST(Laplace, RayleighMatchesSimpsonOracle) {
  const auto g = disk20();
  for (double a : {0.01, 0.1, 1.0}) {
    const auto r = radio(1, 1.8, a);
    for (double s : {1e3, 1.44e4, 5e4}) {
      EXPECT_NEAR(laplace_interference(s, g, r), rayleigh_laplace(s, g, r), 1e-10) << a << " " << s;
    }
  }
}

TEST(Laplace, DerivativesMatchFiniteDifferences) {
  const auto g = disk20();
  const auto r = radio(3, 1.8, 0.05);
  const InterferenceLaplace L(g, r);
  const double s = 2e4, h = 20.0;
  const double fd1 = (L.value(s + h) - L.value(s - h)) / (2 * h);
  const double fd2 = (L.value(s + h) - 2 * L.value(s) + L.value(s - h)) / (h * h);
  EXPECT_NEAR(L.derivative(1, s), fd1, 1e-4 * std::abs(fd1));
  EXPECT_NEAR(L.derivative(2, s), fd2, 1e-3 * std::abs(fd2));
  EXPECT_LT(L.derivative(1, s), 0.0);
  EXPECT_GT(L.derivative(2, s), 0.0);
  EXPECT_THROW(laplace_derivative(3, s, g, r), InvalidArgument);
}

TEST(Success, RayleighMatchesNestedSimpson) {
  const auto g = disk20();
  const auto r = radio();
  const double oracle = 2.0 * kPi * g.density * r.aloha_probability *
                        simpson(
                            [&](double x) {
                              return rayleigh_laplace(r.sinr_threshold * std::pow(x, 3.0), g, r) * x;
                            },
                            g.altitude, g.slant_range(), 400);
  EXPECT_NEAR(success_probability(g, r), oracle, 1e-9);
  EXPECT_NEAR(success_probability(g, r), 0.4487, 1e-3);
}

TEST(Success, BasicShape) {
  const auto g = disk20();
  EXPECT_DOUBLE_EQ(success_probability(g, radio(1, 1.8, 0.0)), 0.0);
  double prev = 1.0;
  for (double beta = 1.0; beta <= 10.0; beta += 0.5) {
    const double p = success_probability(g, radio(1, beta));
    EXPECT_LT(p, prev);
    prev = p;
  }
  for (int m = 1; m <= 4; ++m) {
    const double p = success_probability(g, radio(m));
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
}

TEST(Success, LensAngle) {
  EXPECT_DOUBLE_EQ(lens_angle(1.0, 20.0, 30.0), 2.0 * kPi);
  EXPECT_DOUBLE_EQ(lens_angle(5.0, 20.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(lens_angle(0.0, 20.0, 10.0), 0.0);
  for (double w : {11.0, 15.0, 20.0, 25.0}) {
    const double c = (400.0 + w * w - 100.0) / (40.0 * w);
    EXPECT_NEAR(lens_angle(w, 20.0, 10.0), 2.0 * std::acos(std::clamp(c, -1.0, 1.0)), 1e-12) << w;
  }
}

TEST(Success, EdgeProbabilityLimits) {
  const auto g = disk20();
  const auto r = radio();
  const double ps = success_probability(g, r);
  // Probe disk swallowing the hovering disk.
  EXPECT_NEAR(edge_success_probability(g, r, 45.0), ps, 1e-9);
  const double pe = edge_success_probability(g, r, 7.4);
  EXPECT_GT(pe, 0.0);
  EXPECT_LT(pe, ps);
  EXPECT_LT(edge_success_probability(g, r, 3.0), pe);
  EXPECT_THROW(edge_success_probability(g, r, 0.0), InvalidArgument);
}

TEST(Success, ProfileAgreesWithDirectEvaluation) {
  const InterferenceLaplace L(disk20(), radio(2));
  const SuccessProfile p(L);
  EXPECT_LE(p.max_error(), 1e-8);
  for (double r = 20.0; r <= 28.28; r += 0.37) EXPECT_NEAR(p(r), L.conditional_success(r), 1e-8);
  for (double rm : {2.0, 7.4, 20.0, 35.0}) {
    EXPECT_NEAR(edge_success_probability(p, rm), edge_success_probability(L, rm), 1e-8) << rm;
  }
}

TEST(Optimize, AlohaMaximizesSuccess) {
  const auto g = disk20();
  const double a = optimal_aloha(g, radio());
  EXPECT_NEAR(a, 0.0127, 5e-4);
  const double best = success_probability(g, radio(1, 1.8, a));
  EXPECT_GE(best, success_probability(g, radio(1, 1.8, a * 0.95)));
  EXPECT_GE(best, success_probability(g, radio(1, 1.8, a * 1.05)));
  EXPECT_DOUBLE_EQ(optimal_aloha(HoverGeometry::make(1.0, 1.0, 0.1), radio()), 1.0);
}

TEST(Optimize, BetaNearPublishedOptimum) {
  const auto best = optimal_beta(disk20(), radio());
  EXPECT_GE(best.beta, 1.5);
  EXPECT_LE(best.beta, 2.2);
  EXPECT_NEAR(best.throughput, best.success * std::log2(1.0 + best.beta), 1e-15);
  EXPECT_NEAR(maximize_rate([](double b) { return std::exp(-b / 3.0); }, 20.0), 1.857, 0.01);
}

TEST(Optimize, GoldenSectionReturnsMonotoneEndpoint) {
  const auto m = golden_section_max([](double x) { return x; }, 0.0, 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(m.x, 1.0);
}

TEST(HoverTime, SlotAndAggregation) {
  const auto r = radio();
  EXPECT_NEAR(slot_duration(r), 40960.0 / (200e3 * std::log2(2.8)), 1e-15);
  const auto h = hover_time_aggregation(5, 250.0, 0.5, r);
  EXPECT_NEAR(h.slots, 100.0, 1e-12);
  EXPECT_NEAR(h.time, 100.0 * slot_duration(r), 1e-12);
  EXPECT_DOUBLE_EQ(hover_time_aggregation(5, 0.0, 0.5, r).time, 0.0);
  EXPECT_FALSE(hover_time_aggregation(5, 250.0, 0.0, r).feasible);
  // Doubling zeta doubles the hover time.
  EXPECT_NEAR(hover_time_aggregation(5, 500.0, 0.5, r).time, 2.0 * h.time, 1e-12);
}

TEST(RadioSpec, Validation) {
  RadioSpec r;
  r.sinr_threshold = 0.5;
  EXPECT_THROW(r.validate(), InvalidArgument);
  r = RadioSpec{};
  r.nakagami_m = 0;
  EXPECT_THROW(r.validate(), InvalidArgument);
  EXPECT_THROW(HoverGeometry::make(-1.0, 1.0, 0.1), InvalidArgument);
}
