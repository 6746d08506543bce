// Acceptance runner: `acceptance` runs every criterion, `acceptance --criterion N`
// runs one. Prints "criterion N: PASS|FAIL <details>" per criterion; exits
// non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hoverplan/channel/optimize.hpp"
#include "hoverplan/channel/success.hpp"
#include "hoverplan/geometry/coverage_table.hpp"
#include "hoverplan/mission/planner.hpp"
#include "hoverplan/simkit/experiments.hpp"
#include "property_checks.hpp"

using namespace hoverplan;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int worker_threads() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

double round3(double v) {
  if (v == 0.0) return 0.0;
  const double scale = std::pow(10.0, 2 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
  return std::round(v * scale) / scale;
}

channel::HoverGeometry disk20() { return channel::HoverGeometry::make(20.0, 20.0, 0.1); }

// 1. Coverage table for M = 1..10 against the reference values.
void coverage_table(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const auto table = geometry::build_coverage_table(10, 1);
  const double elapsed = seconds_since(start);
  const auto ref = geometry::reference_coverage_values();
  double worst_delta = 0.0, worst_alpha = 0.0;
  for (int M = 1; M <= 10; ++M) {
    const auto& got = table.at(M);
    const auto& want = ref.at(M);
    const double dd = std::abs(got.delta - want.delta) / want.delta;
    worst_delta = std::max(worst_delta, dd);
    v.check(dd <= 0.02, "M=" + std::to_string(M) + " delta " + fmt(got.delta) + " vs " + fmt(want.delta));
    if (M == 1 || M == 4)
      v.check(round3(got.delta) == want.delta, "M=" + std::to_string(M) + " delta exact to table digits");
    if (want.alpha > 0.0) {
      const double da = std::abs(got.alpha - want.alpha) / want.alpha;
      worst_alpha = std::max(worst_alpha, da);
      v.check(da <= 0.10, "M=" + std::to_string(M) + " alpha " + fmt(got.alpha) + " vs " + fmt(want.alpha));
    } else {
      v.check(got.alpha == 0.0, "M=1 alpha 0");
    }
  }
  v.check(elapsed < 300.0, "runtime " + fmt(elapsed, 3) + " s");
  v.detail << " | worst delta err " << fmt(100 * worst_delta, 3) << "%, worst alpha err " << fmt(100 * worst_alpha, 3)
           << "%";
}

// 2. alpha_M ~ sqrt(c M) + d fitted to the reference table.
void alpha_fit(Verdict& v) {
  const auto fit = geometry::fit_alpha(geometry::reference_coverage_values());
  v.check(std::abs(fit.c - 1.35) <= 0.135, "c = " + fmt(fit.c) + " (target 1.35 +- 10%)");
  v.check(std::abs(fit.d + 0.4) <= 0.04, "d = " + fmt(fit.d) + " (target -0.4 +- 10%)");
  v.check(std::abs(fit.relative_error - 0.055) <= 0.015,
          "error " + fmt(100 * fit.relative_error, 3) + "% (target 5.5 +- 1.5%)");
  v.detail << " | fitted M=" << fit.first_M << ".." << fit.last_M;
}

// 3. Analytic success probability against slot-level simulation.
void success_oracle(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  int agree = 0;
  std::uint64_t seed = 300;
  for (int m : {1, 2, 3}) {
    for (double beta : {1.0, 1.8, 5.0, 10.0}) {
      simkit::SimConfig c;
      c.seed = ++seed;
      c.geom = disk20();
      c.radio.nakagami_m = m;
      c.radio.sinr_threshold = beta;
      c.radio.aloha_probability = channel::optimal_aloha(c.geom, c.radio);
      c.replications = 4;
      c.slots = 25000;
      c.threads = worker_threads();
      const auto stats = simkit::estimate_success_probability(c);
      const double analytic = channel::success_probability(c.geom, c.radio);
      const double z = (stats.success_probability - analytic) / stats.success_se;
      const bool ok = std::abs(z) <= 3.0;
      agree += ok;
      v.check(ok, "m=" + std::to_string(m) + " beta=" + fmt(beta, 3) + " P_s " + fmt(analytic) + " mc " +
                      fmt(stats.success_probability) + " z=" + fmt(z, 2));
    }
  }
  const double elapsed = seconds_since(start);
  v.check(elapsed < 600.0, "runtime " + fmt(elapsed, 3) + " s");
  v.detail << " | " << agree << "/12 within 3 SE";
}

// 4. Optimal SINR threshold and unimodal hovering time per sample.
void beta_optimum(Verdict& v) {
  const auto geom = disk20();
  const channel::RadioSpec radio;
  const auto best = channel::optimal_beta(geom, radio);
  v.check(best.beta >= 1.5 && best.beta <= 2.2, "beta* = " + fmt(best.beta) + " (a = " + fmt(best.aloha) + ")");

  // T_hover per collected sample = tau / P_s, with a re-optimized per beta.
  std::vector<double> t;
  for (int i = 0; i < 50; ++i) {
    channel::RadioSpec r = radio;
    r.sinr_threshold = 1.0 + 9.0 * i / 49.0;
    r.aloha_probability = channel::optimal_aloha(geom, r);
    t.push_back(channel::slot_duration(r) / channel::success_probability(geom, r));
  }
  int turns = 0, last_sign = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const int sign = t[i] > t[i - 1] ? 1 : (t[i] < t[i - 1] ? -1 : 0);
    if (sign != 0 && last_sign != 0 && sign != last_sign) ++turns;
    if (sign != 0) last_sign = sign;
  }
  const auto argmin = std::min_element(t.begin(), t.end()) - t.begin();
  v.check(turns <= 1, "T_hover(beta) direction changes: " + std::to_string(turns) + ", grid minimum at beta " +
                          fmt(1.0 + 9.0 * argmin / 49.0, 3));
}

mission::MissionReport default_plan(mission::MissionKind kind, int K = 1) {
  mission::PlanOptions opts;
  opts.K = K;
  const mission::FieldSpec field;
  const geometry::DroneSpec drone;
  const channel::RadioSpec radio;
  return kind == mission::MissionKind::Aggregation ? mission::plan_aggregation(field, drone, radio, 250.0, opts)
                                                   : mission::plan_estimation(field, drone, radio, 0.2, opts);
}

std::string curve(const mission::MissionReport& report) {
  std::string s;
  for (const auto& r : report.records)
    s += (s.empty() ? "" : " ") + std::to_string(r.M) + ":" + (r.feasible ? fmt(r.total) : std::string("inf"));
  return s;
}

// 5. Aggregation optimum.
void aggregation_optimum(Verdict& v) {
  const auto report = default_plan(mission::MissionKind::Aggregation);
  v.check(report.feasible(), "plan feasible");
  if (!report.feasible()) return;
  const auto& best = report.optimum();
  v.check(best.M >= 5 && best.M <= 7, "M* = " + std::to_string(best.M));
  v.check(std::abs(best.total - 223.0) <= 0.15 * 223.0, "T_total = " + fmt(best.total) + " s");
  v.detail << " | T_total by M: " << curve(report);
}

// 6. Estimation optimum.
void estimation_optimum(Verdict& v) {
  const auto report = default_plan(mission::MissionKind::Estimation);
  v.check(report.feasible(), "plan feasible");
  if (!report.feasible()) return;
  const auto& best = report.optimum();
  v.check(best.M >= 8 && best.M <= 10, "M* = " + std::to_string(best.M) + ", J* = " + std::to_string(best.J_star) +
                                            ", T_total = " + fmt(best.total) + " s");
  v.detail << " | T_total by M: " << curve(report);
}

// 7. Kriging MSE at the hovering-circle edges after flying the estimation plan.
void mse_guarantee(Verdict& v) {
  const auto report = default_plan(mission::MissionKind::Estimation);
  v.check(report.feasible(), "plan feasible");
  if (!report.feasible()) return;
  const auto& best = report.optimum();
  simkit::MissionSimConfig c;
  c.seed = 7;
  c.replications = 200;
  c.centers = best.centers;
  c.radius = best.radius;
  c.altitude = best.altitude;
  c.radio.sinr_threshold = best.beta;
  c.radio.aloha_probability = best.aloha;
  c.slots_per_location = best.J_star;
  c.probes = 20;
  c.threads = worker_threads();
  const auto stats = simkit::simulate_estimation_mission(c);
  const double frac = stats.fraction_within(0.2);
  double mean_var = 0, mean_sq = 0, mean_obs = 0;
  for (std::size_t i = 0; i < stats.posterior_mse.size(); ++i) {
    mean_var += stats.posterior_mse[i] / stats.posterior_mse.size();
    mean_sq += stats.squared_error[i] / stats.posterior_mse.size();
    mean_obs += static_cast<double>(stats.observations[i]) / stats.posterior_mse.size();
  }
  v.check(frac >= 0.95, "M* = " + std::to_string(best.M) + ", J* = " + std::to_string(best.J_star) + ": " +
                            fmt(100 * frac, 4) + "% of 200 replications with mean edge MSE <= 0.2");
  v.detail << " | mean posterior MSE " << fmt(mean_var) << ", mean squared error " << fmt(mean_sq)
           << ", mean observations " << fmt(mean_obs);
}

// 8. Lens-restricted success probability against simulation.
void edge_oracle(Verdict& v) {
  const std::vector<std::pair<double, double>> pairs{{20, 3}, {20, 7.5}, {20, 15}, {10, 5}, {30, 10}, {40, 25}};
  std::uint64_t seed = 800;
  int agree = 0;
  for (const auto& [R, rm] : pairs) {
    simkit::SimConfig c;
    c.seed = ++seed;
    c.geom = channel::HoverGeometry::make(R, R, 0.1);
    c.radio.aloha_probability = channel::optimal_aloha(c.geom, c.radio);
    c.edge_radius = rm;
    c.replications = 4;
    c.slots = 25000;
    c.threads = worker_threads();
    const auto stats = simkit::estimate_success_probability(c);
    const double analytic = channel::edge_success_probability(c.geom, c.radio, rm);
    const double se = std::max(stats.edge_se, 1.0 / static_cast<double>(stats.trials));
    const double z = (stats.edge_probability - analytic) / se;
    const bool ok = std::abs(z) <= 3.0;
    agree += ok;
    v.check(ok, "R=" + fmt(R, 3) + " R_mse=" + fmt(rm, 3) + " P_e " + fmt(analytic) + " mc " +
                    fmt(stats.edge_probability) + " z=" + fmt(z, 2));
  }
  v.detail << " | " << agree << "/6 within 3 SE";
}

// 9. Property suites.
void property_suites(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& check : properties::suite()) {
    const auto failure = check.run();
    v.check(failure.empty(), std::string(check.name) + (failure.empty() ? "" : ": " + failure));
  }
  const double elapsed = seconds_since(start);
  v.check(elapsed < 180.0, "runtime " + fmt(elapsed, 3) + " s");
}

// 10. Mission time over 22 hovering locations for K = 1..6 UAVs.
void multi_uav(Verdict& v) {
  const mission::FieldSpec field;
  const geometry::DroneSpec drone;
  const channel::RadioSpec radio;
  mission::PlanOptions base;
  base.M_min = base.M_max = 22;
  // Solve the 22-circle coverage once and share it across K.
  {
    auto table = std::make_shared<geometry::NormalizedCoverageTable>();
    const auto plan = geometry::solve_coverage(22, 1.0, base.seed, base.coverage_options);
    for (int M = 1; M <= 22; ++M) table->rows.push_back({M, 0.0, 0.0, {}});
    table->rows[21].delta = plan.radius;
    table->rows[21].centers = plan.centers;
    base.coverage = table;
  }
  double prev = INFINITY;
  std::string totals;
  for (int K = 1; K <= 6; ++K) {
    auto opts = base;
    opts.K = K;
    const auto report = mission::plan_aggregation(field, drone, radio, 250.0, opts);
    const auto* rec = report.find(22);
    if (!rec || !rec->feasible) {
      v.check(false, "K=" + std::to_string(K) + " infeasible");
      continue;
    }
    v.check(rec->total <= prev * 1.02, "K=" + std::to_string(K) + " T=" + fmt(rec->total));
    totals += (totals.empty() ? "" : " ") + fmt(rec->total);
    prev = std::min(prev, rec->total);
  }
  v.detail << " | max-tour times " << totals;
}

const std::vector<std::function<void(Verdict&)>>& criteria() {
  static const std::vector<std::function<void(Verdict&)>> all{
      coverage_table, alpha_fit,  success_oracle,  beta_optimum, aggregation_optimum,
      estimation_optimum, mse_guarantee, edge_oracle, property_suites, multi_uav,
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
      return 1;
    }
  }
  if (selected.empty())
    for (int n = 1; n <= static_cast<int>(criteria().size()); ++n) selected.push_back(n);

  bool all_pass = true;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "no criterion %d\n", n);
      return 1;
    }
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria()[n - 1](v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s %s (%.1f s)\n", n, v.pass ? "PASS" : "FAIL", v.detail.str().c_str(),
                seconds_since(start));
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 1;
}
