// hoverplan: coverage tables, mission planning, parameter sweeps and Monte
// Carlo checks for single- and multi-UAV data collection.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hoverplan/channel/optimize.hpp"
#include "hoverplan/channel/success.hpp"
#include "hoverplan/field/edge_mse.hpp"
#include "hoverplan/geometry/coverage_table.hpp"
#include "hoverplan/io/config.hpp"
#include "hoverplan/io/csv.hpp"
#include "hoverplan/mission/report.hpp"
#include "hoverplan/simkit/experiments.hpp"

namespace fs = std::filesystem;
using namespace hoverplan;

namespace {

enum Exit { kOk = 0, kCrash = 1, kInfeasible = 2, kMismatch = 3 };

struct Common {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_root;
  std::string label;
  bool paper_literal = false;
  std::optional<double> fixed_beta;
  std::optional<double> fixed_a;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_file, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", c.overrides, "override one config key (key=value), repeatable");
  cmd->add_option("--out", c.out_root, "output root (default: $HOVERPLAN_OUT, then the config's out)");
  cmd->add_option("--label", c.label, "output sub-directory (default: config hash)");
  cmd->add_flag("--paper-literal-kinematics", c.paper_literal, "use the discontinuous short-hop formula");
  cmd->add_option("--fixed-beta", c.fixed_beta, "pin the SINR threshold")->check(CLI::Range(1.0, 1e6));
  cmd->add_option("--fixed-a", c.fixed_a, "pin the ALOHA probability")->check(CLI::Range(1e-12, 1.0));
}

io::RunConfig load(const Common& c) {
  io::RunConfig cfg = c.config_file.empty() ? io::RunConfig{} : io::load_config(c.config_file);
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.paper_literal) cfg.kinematics = geometry::KinematicsModel::PaperLiteral;
  if (c.fixed_beta) cfg.fixed_beta = c.fixed_beta;
  if (c.fixed_a) cfg.fixed_aloha = c.fixed_a;
  cfg.validate();
  return cfg;
}

fs::path output_dir(const Common& c, const io::RunConfig& cfg, const std::string& command) {
  std::string root = c.out_root;
  if (root.empty()) {
    const char* env = std::getenv("HOVERPLAN_OUT");
    root = env && *env ? env : cfg.out_root;
  }
  const fs::path dir = fs::path(root) / command / (c.label.empty() ? cfg.hash() : c.label);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// "lo:hi:n" (inclusive, linear) or "v1,v2,...".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::istringstream is(text);
    double lo = 0, hi = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
      throw InvalidArgument("grid must be lo:hi:n or a comma list, got '" + text + "'");
    }
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(units::parse_quantity(item, units::Dimension::Dimensionless));
  }
  if (out.empty()) throw InvalidArgument("empty grid");
  return out;
}

std::shared_ptr<const geometry::NormalizedCoverageTable> load_table(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::make_shared<const geometry::NormalizedCoverageTable>(geometry::read_coverage_table(fs::path(path)));
}

// ---- coverage-table -------------------------------------------------------

struct CoverageArgs {
  Common common;
  int M_max = 10;
};

int run_coverage_table(const CoverageArgs& a) {
  const io::RunConfig cfg = load(a.common);
  geometry::CoverageOptions opt;
  opt.restarts = cfg.coverage_restarts;
  opt.hops_per_restart = cfg.coverage_hops;
  const auto table = geometry::build_coverage_table(a.M_max, cfg.seed, opt);
  const fs::path dir = output_dir(a.common, cfg, "coverage-table");
  std::ostringstream comment;
  comment << "config_hash=" << cfg.hash() << " seed=" << cfg.seed << " restarts=" << opt.restarts
          << " hops=" << opt.hops_per_restart;
  geometry::write_coverage_table(dir / "table.csv", table, comment.str());
  std::cout << "M  delta     alpha\n";
  for (const auto& r : table.rows) std::printf("%-2d %.6f  %.6f\n", r.M, r.delta, r.alpha);
  std::cout << "wrote " << (dir / "table.csv").string() << '\n';
  return kOk;
}

// ---- plan -----------------------------------------------------------------

struct PlanArgs {
  Common common;
  std::vector<int> K;
  std::string table;
  std::string mission;
};

int run_plan(PlanArgs& a) {
  if (!a.mission.empty()) a.common.overrides.push_back("mission=" + a.mission);
  io::RunConfig cfg = load(a.common);
  const auto table = load_table(a.table);
  std::vector<int> Ks = a.K.empty() ? std::vector<int>{cfg.K} : a.K;
  const fs::path dir = output_dir(a.common, cfg, "plan");
  bool all_feasible = true;
  for (int K : Ks) {
    io::RunConfig run = cfg;
    run.K = K;
    run.validate();
    auto options = run.plan_options();
    options.coverage = table;
    const auto report = run.kind == mission::MissionKind::Aggregation
                            ? mission::plan_aggregation(run.field, run.drone, run.radio, run.zeta, options)
                            : mission::plan_estimation(run.field, run.drone, run.radio, run.delta, options);
    const fs::path sub = Ks.size() > 1 ? dir / ("K" + std::to_string(K)) : dir;
    fs::create_directories(sub);
    open_out(sub / "report.json") << mission::report_json(report, run.hash(), run.seed);
    auto csv = open_out(sub / "sweep.csv");
    mission::write_report_csv(csv, report, run.hash(), run.seed);

    std::printf("%s K=%d: ", mission::to_string(report.kind), K);
    if (report.feasible()) {
      const auto& o = report.optimum();
      std::printf("M*=%d T_total=%.2f s (hover %.2f s, travel %.2f s)\n", o.M, o.total, o.hover_total, o.travel);
    } else {
      std::printf("infeasible\n");
      all_feasible = false;
    }
    std::cout << "wrote " << sub.string() << '\n';
  }
  return all_feasible ? kOk : kInfeasible;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  Common common;
  std::string axis;
  std::string grid;
  double radius = 20.0;
  bool with_mc = false;
  long long slots = 100000;
  std::string table;
};

channel::HoverGeometry disk(const io::RunConfig& cfg, double R) {
  return channel::HoverGeometry::make(R, R / std::tan(0.5 * cfg.drone.beamwidth), cfg.field.density);
}

channel::RadioSpec tuned(const io::RunConfig& cfg, const channel::HoverGeometry& g, bool tune_beta) {
  channel::RadioSpec r = cfg.radio;
  if (cfg.fixed_beta) r.sinr_threshold = *cfg.fixed_beta;
  else if (tune_beta) r.sinr_threshold = channel::optimal_beta(g, r).beta;
  r.aloha_probability = cfg.fixed_aloha ? *cfg.fixed_aloha : channel::optimal_aloha(g, r);
  return r;
}

simkit::SimStats monte_carlo(const io::RunConfig& cfg, const channel::HoverGeometry& g, const channel::RadioSpec& r,
                             long long slots, double edge_radius = 0.0) {
  simkit::SimConfig sc;
  sc.seed = cfg.seed;
  sc.slots = slots;
  sc.geom = g;
  sc.radio = r;
  sc.edge_radius = edge_radius;
  return simkit::estimate_success_probability(sc);
}

int run_sweep(const SweepArgs& a) {
  const io::RunConfig cfg = load(a.common);
  const auto grid = parse_grid(a.grid);
  const fs::path dir = output_dir(a.common, cfg, "sweep");
  auto out = open_out(dir / "sweep.csv");
  using io::format_number;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  const auto mc_cols = [&](std::vector<std::string>& row, const simkit::SimStats& s, bool edge) {
    row.push_back(format_number(edge ? s.edge_probability : s.success_probability));
    row.push_back(format_number(edge ? s.edge_se : s.success_se));
  };

  if (a.axis == "beta" || a.axis == "a" || a.axis == "R") {
    header = {"R", "beta", "a", "P_s", "throughput", "slot_time", "T_hover"};
    if (a.with_mc) header.insert(header.end(), {"P_s_mc", "P_s_se"});
    for (double x : grid) {
      channel::RadioSpec r = cfg.radio;
      auto g = disk(cfg, a.radius);
      if (a.axis == "beta") {
        r.sinr_threshold = x;
        r.aloha_probability = cfg.fixed_aloha ? *cfg.fixed_aloha : channel::optimal_aloha(g, r);
      } else if (a.axis == "a") {
        if (cfg.fixed_beta) r.sinr_threshold = *cfg.fixed_beta;
        r.aloha_probability = x;
      } else {
        g = disk(cfg, x);
        r = tuned(cfg, g, false);
      }
      const double ps = channel::success_probability(g, r);
      const auto hover = channel::hover_time_aggregation(1, cfg.zeta, ps, r);
      std::vector<std::string> row{format_number(g.radius), format_number(r.sinr_threshold),
                                   format_number(r.aloha_probability), format_number(ps),
                                   format_number(ps * r.spectral_efficiency()), format_number(hover.slot_time),
                                   format_number(hover.time)};
      if (a.with_mc) mc_cols(row, monte_carlo(cfg, g, r, a.slots), false);
      rows.push_back(std::move(row));
    }
  } else if (a.axis == "R_mse") {
    header = {"R_mse", "rho", "P_e_s", "J_real", "J_ceil", "bound_at_J"};
    if (a.with_mc) header.insert(header.end(), {"P_e_s_mc", "P_e_s_se"});
    const auto g = disk(cfg, a.radius);
    const auto r = tuned(cfg, g, true);
    const channel::SuccessProfile profile(channel::InterferenceLaplace(g, r));
    for (double x : grid) {
      const auto s = field::slots_at_radius(profile, cfg.field.cov, cfg.delta, x);
      const double J = std::isfinite(s.J_real) ? std::max(1.0, std::ceil(s.J_real)) : s.J_real;
      double bound = std::nan("");
      if (std::isfinite(J) && s.rho > 0.0) {
        bound = field::edge_mse_bound(field::no_success_probability(s.P_e_s, J, s.rho), x, cfg.field.cov).value;
      }
      std::vector<std::string> row{format_number(x), format_number(s.rho), format_number(s.P_e_s),
                                   format_number(s.J_real), format_number(J), format_number(bound)};
      if (a.with_mc) mc_cols(row, monte_carlo(cfg, g, r, a.slots, x), true);
      rows.push_back(std::move(row));
    }
  } else if (a.axis == "area") {
    header = {"side", "M_star", "T_total", "T_travel_approx_at_M_star", "approx_bound_ok"};
    auto options = cfg.plan_options();
    options.coverage = load_table(a.table);
    const double target = cfg.kind == mission::MissionKind::Aggregation ? cfg.zeta : cfg.delta;
    const auto sweep = mission::optimal_M_vs_area(grid, cfg.kind, cfg.field, cfg.drone, cfg.radio, target, options);
    const auto reference = geometry::reference_coverage_values();
    for (const auto& row : sweep.rows) {
      geometry::TravelApprox approx;
      if (row.M_star >= 1 && row.M_star <= reference.max_M()) {
        approx = geometry::travel_time_approx(row.M_star, row.side, cfg.drone, reference);
      }
      rows.push_back({format_number(row.side), std::to_string(row.M_star), format_number(row.total),
                      format_number(approx.time), approx.bound_satisfied ? "1" : "0"});
    }
    if (!sweep.non_decreasing) std::cerr << "note: M* decreased somewhere along the area grid\n";
  } else {
    throw InvalidArgument("unknown sweep axis '" + a.axis + "' (beta, a, R, R_mse, area)");
  }

  io::CsvWriter csv(out, cfg.hash(), cfg.seed, header);
  for (const auto& row : rows) csv.row(row);
  std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << rows.size() << " rows)\n";
  return kOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  Common common;
  long long slots = 100000;
  int replications = 1;
  double radius = 20.0;
  double edge_radius = 0.0;
  int threads = 1;
  bool raw = false;
};

int run_simulate(const SimulateArgs& a) {
  const io::RunConfig cfg = load(a.common);
  const auto g = disk(cfg, a.radius);
  channel::RadioSpec r = cfg.radio;
  if (cfg.fixed_beta) r.sinr_threshold = *cfg.fixed_beta;
  if (cfg.fixed_aloha) r.aloha_probability = *cfg.fixed_aloha;
  const fs::path dir = output_dir(a.common, cfg, "simulate");

  simkit::SimConfig sc;
  sc.seed = cfg.seed;
  sc.slots = a.slots;
  sc.replications = a.replications;
  sc.geom = g;
  sc.radio = r;
  sc.threads = a.threads;
  sc.edge_radius = a.edge_radius;
  if (a.raw) sc.raw_csv = (dir / "raw.csv.gz").string();
  const auto stats = simkit::estimate_success_probability(sc);

  const channel::InterferenceLaplace laplace(g, r);
  const double analytic = channel::success_probability(laplace);
  const double z = stats.success_se > 0 ? (stats.success_probability - analytic) / stats.success_se : 0.0;
  bool pass = std::abs(z) <= 3.0;

  nlohmann::ordered_json j;
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
  j["R"] = g.radius;
  j["h"] = g.altitude;
  j["beta"] = r.sinr_threshold;
  j["aloha"] = r.aloha_probability;
  j["m"] = r.nakagami_m;
  j["trials"] = stats.trials;
  j["P_s_mc"] = stats.success_probability;
  j["P_s_se"] = stats.success_se;
  j["P_s_analytic"] = analytic;
  j["z"] = z;
  j["multi_capture_slots"] = stats.multi_capture_slots;
  j["radial_edges"] = stats.radial_edges;
  j["radial_counts"] = stats.radial_counts;
  std::printf("P_s analytic %.6f  monte carlo %.6f +- %.6f  (z = %+.2f)  %s\n", analytic, stats.success_probability,
              stats.success_se, z, pass ? "PASS" : "FAIL");
  if (a.edge_radius > 0.0) {
    const double edge = channel::edge_success_probability(laplace, a.edge_radius);
    const double ze = stats.edge_se > 0 ? (stats.edge_probability - edge) / stats.edge_se : 0.0;
    const bool edge_pass = std::abs(ze) <= 3.0;
    pass = pass && edge_pass;
    j["R_mse"] = a.edge_radius;
    j["P_e_s_mc"] = stats.edge_probability;
    j["P_e_s_se"] = stats.edge_se;
    j["P_e_s_analytic"] = edge;
    j["z_edge"] = ze;
    std::printf("P_e analytic %.6f  monte carlo %.6f +- %.6f  (z = %+.2f)  %s\n", edge, stats.edge_probability,
                stats.edge_se, ze, edge_pass ? "PASS" : "FAIL");
  }
  j["verdict"] = pass ? "PASS" : "FAIL";
  open_out(dir / "simstats.json") << j.dump(2) << '\n';
  std::cout << "wrote " << dir.string() << '\n';
  return pass ? kOk : kMismatch;
}

// ---- fit-alpha ------------------------------------------------------------

int run_fit_alpha(const std::string& table_path) {
  const auto table = table_path.empty() ? geometry::reference_coverage_values()
                                        : geometry::read_coverage_table(fs::path(table_path));
  const auto fit = geometry::fit_alpha(table);
  std::printf("alpha_M ~ sqrt(%.4f M) %+.4f over M = %d..%d, relative l2 error %.2f%%\n", fit.c, fit.d, fit.first_M,
              fit.last_M, 100.0 * fit.relative_error);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV hovering-location planning for IoT data collection"};
  app.require_subcommand(1);

  CoverageArgs cov;
  auto* c_cov = app.add_subcommand("coverage-table", "write the normalized circle-covering table");
  add_common(c_cov, cov.common);
  c_cov->add_option("--M-max", cov.M_max, "largest M")->check(CLI::PositiveNumber);

  PlanArgs plan;
  auto* c_plan = app.add_subcommand("plan", "sweep M and report the minimum-time mission");
  add_common(c_plan, plan.common);
  c_plan->add_option("--mission", plan.mission, "aggregation or estimation")
      ->check(CLI::IsMember({"aggregation", "estimation"}));
  c_plan->add_option("--K", plan.K, "number of UAVs; repeat for a comparison run")->check(CLI::PositiveNumber);
  c_plan->add_option("--coverage-table", plan.table, "cached table.csv")->check(CLI::ExistingFile);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "analytic curves over one parameter");
  add_common(c_sweep, sweep.common);
  c_sweep->add_option("--axis", sweep.axis, "beta, a, R, R_mse or area")
      ->required()
      ->check(CLI::IsMember({"beta", "a", "R", "R_mse", "area"}));
  c_sweep->add_option("--grid", sweep.grid, "lo:hi:n or comma list")->required();
  c_sweep->add_option("--radius", sweep.radius, "hovering radius R for beta/a/R_mse sweeps [m]")
      ->check(CLI::PositiveNumber);
  c_sweep->add_flag("--with-mc", sweep.with_mc, "add Monte Carlo columns");
  c_sweep->add_option("--slots", sweep.slots, "Monte Carlo slots per point")->check(CLI::PositiveNumber);
  c_sweep->add_option("--coverage-table", sweep.table, "cached table.csv for the area axis")
      ->check(CLI::ExistingFile);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo check of the success probabilities");
  add_common(c_sim, sim.common);
  c_sim->add_option("--slots", sim.slots, "slots per replication")->check(CLI::PositiveNumber);
  c_sim->add_option("--replications", sim.replications, "independent replications")->check(CLI::PositiveNumber);
  c_sim->add_option("--radius", sim.radius, "hovering radius R [m]")->check(CLI::PositiveNumber);
  c_sim->add_option("--edge-radius", sim.edge_radius, "also check the edge probe disk of this radius [m]")
      ->check(CLI::NonNegativeNumber);
  c_sim->add_option("--threads", sim.threads, "worker threads")->check(CLI::PositiveNumber);
  c_sim->add_flag("--raw", sim.raw, "write per-slot records to raw.csv.gz");

  std::string fit_table;
  auto* c_fit = app.add_subcommand("fit-alpha", "fit alpha_M ~ sqrt(cM) + d");
  c_fit->add_option("--table", fit_table, "table.csv (default: reference values)")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kCrash;
  }

  try {
    if (*c_cov) return run_coverage_table(cov);
    if (*c_plan) return run_plan(plan);
    if (*c_sweep) return run_sweep(sweep);
    if (*c_sim) return run_simulate(sim);
    if (*c_fit) return run_fit_alpha(fit_table);
  } catch (const std::exception& e) {
    std::cerr << "hoverplan: " << e.what() << '\n';
    return kCrash;
  }
  return kCrash;
}
