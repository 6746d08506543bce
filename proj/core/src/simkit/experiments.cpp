#include "hoverplan/simkit/experiments.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hoverplan/field/kriging.hpp"
#include "hoverplan/simkit/aloha.hpp"

namespace hoverplan::simkit {

void SimConfig::validate() const {
  require(slots >= 1, "simulation: slots must be >= 1");
  require(replications >= 1, "simulation: replications must be >= 1");
  require(threads >= 1, "simulation: threads must be >= 1");
  require(radial_bins >= 1, "simulation: radial_bins must be >= 1");
  require(edge_radius >= 0.0, "simulation: edge_radius must be non-negative");
  geom.validate();
  radio.validate();
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, n); ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct SlotRecord {
  int replication;
  long long slot;
  int active;
  int winner_found;
  double x, y, max_sinr;
};

struct ReplicationTally {
  long long successes = 0;
  long long edge_successes = 0;
  long long multi = 0;
  std::vector<long long> radial;
  std::vector<Point> positions;
  std::vector<SlotRecord> records;
};

void write_raw(const std::string& path, const std::vector<ReplicationTally>& tallies) {
  gzFile gz = gzopen(path.c_str(), "wb");
  if (!gz) throw std::runtime_error("cannot open raw output " + path);
  gzputs(gz, "replication,slot,active,success,x,y,max_sinr\n");
  char line[256];
  for (const auto& t : tallies) {
    for (const auto& r : t.records) {
      std::snprintf(line, sizeof line, "%d,%lld,%d,%d,%.17g,%.17g,%.17g\n", r.replication, r.slot, r.active,
                    r.winner_found, r.x, r.y, r.max_sinr);
      gzputs(gz, line);
    }
  }
  if (gzclose(gz) != Z_OK) throw std::runtime_error("failed writing raw output " + path);
}

}  // namespace

SimStats estimate_success_probability(const SimConfig& config) {
  config.validate();
  const double R = config.geom.radius;
  const Point edge_probe{R, 0.0};
  const bool track_edge = config.edge_radius > 0.0;
  const bool keep_raw = !config.raw_csv.empty();

  channel::RadioSpec all_transmit = config.radio;
  all_transmit.aloha_probability = 1.0;
  const double active_density = config.geom.density * config.radio.aloha_probability;

  std::vector<ReplicationTally> tallies(config.replications);
  parallel_for(config.replications, config.threads, [&](int rep) {
    ReplicationTally& t = tallies[rep];
    t.radial.assign(config.radial_bins, 0);
    Rng rng = substream(config.seed, 0x5e55, static_cast<std::uint64_t>(rep));
    for (long long s = 0; s < config.slots; ++s) {
      const auto active = sample_ppp(Disk{{}, R}, active_density, rng);
      const SlotOutcome o = run_aloha_slot(active, Point{}, config.geom, all_transmit, rng);
      if (o.above_threshold > 1) ++t.multi;
      if (keep_raw) {
        const Point w = o.success ? active[o.winner] : Point{};
        t.records.push_back({rep, s, o.active, o.success ? 1 : 0, w.x, w.y, o.max_sinr});
      }
      if (!o.success) continue;
      ++t.successes;
      const Point& w = active[o.winner];
      const double ground = std::hypot(w.x, w.y);
      const int bin = std::min(config.radial_bins - 1, static_cast<int>(ground / R * config.radial_bins));
      ++t.radial[bin];
      if (t.positions.size() < config.max_position_samples) t.positions.push_back(w);
      if (track_edge && distance(w, edge_probe) <= config.edge_radius) ++t.edge_successes;
    }
  });

  SimStats out;
  out.radial_counts.assign(config.radial_bins, 0);
  for (int b = 0; b <= config.radial_bins; ++b) out.radial_edges.push_back(R * b / config.radial_bins);
  for (const auto& t : tallies) {
    out.successes += t.successes;
    out.edge_successes += t.edge_successes;
    out.multi_capture_slots += t.multi;
    for (int b = 0; b < config.radial_bins; ++b) out.radial_counts[b] += t.radial[b];
    for (const auto& p : t.positions) {
      if (out.success_positions.size() < config.max_position_samples) out.success_positions.push_back(p);
    }
  }
  out.trials = config.slots * config.replications;
  out.success_probability = static_cast<double>(out.successes) / out.trials;
  out.success_se = binomial_se(out.success_probability, out.trials);
  if (track_edge) {
    out.edge_probability = static_cast<double>(out.edge_successes) / out.trials;
    out.edge_se = binomial_se(out.edge_probability, out.trials);
  }
  if (keep_raw) write_raw(config.raw_csv, tallies);
  return out;
}

SimStats estimate_edge_mse(const SimConfig& config, double R_mse, int J) {
  config.validate();
  require(J >= 0, "estimate_edge_mse: J must be non-negative");
  require(R_mse > 0.0, "estimate_edge_mse: R_mse must be positive");
  require(std::abs(config.cov.nu - 0.5) < 1e-12, "estimate_edge_mse: exponential covariance (nu = 0.5) required");
  const double R = config.geom.radius;
  const Point probe{R, 0.0};

  struct Rep {
    double sq = 0.0, var = 0.0;
    long long successes = 0, edge = 0;
  };
  std::vector<Rep> reps(config.replications);
  parallel_for(config.replications, config.threads, [&](int rep) {
    Rng rng = substream(config.seed, 0xed9e, static_cast<std::uint64_t>(rep));
    const auto nodes = sample_ppp(Disk{{}, R}, config.geom.density, rng);
    std::vector<char> heard(nodes.size(), 0);
    for (int s = 0; s < J; ++s) {
      const SlotOutcome o = run_aloha_slot(nodes, Point{}, config.geom, config.radio, rng);
      if (!o.success) continue;
      heard[o.winner] = 1;
      ++reps[rep].successes;
      if (distance(nodes[o.winner], probe) <= R_mse) ++reps[rep].edge;
    }
    std::vector<Point> joint(nodes);
    joint.push_back(probe);
    const auto values = field::sample_field(joint, config.cov, rng);
    field::ObservationSet obs;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (heard[i]) obs.add(nodes[i], values[i]);
    }
    const auto k = field::krige(obs, std::span(&probe, 1), config.cov);
    const double err = k.estimates[0] - values.back();
    reps[rep].sq = err * err;
    reps[rep].var = k.mse[0];
  });

  SimStats out;
  const int n = config.replications;
  out.trials = static_cast<long long>(J) * n;
  for (const auto& r : reps) {
    out.squared_errors.push_back(r.sq);
    out.posterior_variances.push_back(r.var);
    out.successes += r.successes;
    out.edge_successes += r.edge;
    out.mse_mean += r.sq / n;
    out.posterior_mean += r.var / n;
  }
  if (out.trials > 0) {
    out.success_probability = static_cast<double>(out.successes) / out.trials;
    out.success_se = binomial_se(out.success_probability, out.trials);
    out.edge_probability = static_cast<double>(out.edge_successes) / out.trials;
    out.edge_se = binomial_se(out.edge_probability, out.trials);
  }
  if (n > 1) {
    double ss = 0.0;
    for (double v : out.squared_errors) ss += (v - out.mse_mean) * (v - out.mse_mean);
    out.mse_se = std::sqrt(ss / (n - 1) / n);
  }
  return out;
}

double MissionSimStats::fraction_within(double delta) const {
  if (posterior_mse.empty()) return 0.0;
  const auto ok = std::count_if(posterior_mse.begin(), posterior_mse.end(), [&](double v) { return v <= delta; });
  return static_cast<double>(ok) / posterior_mse.size();
}

std::vector<Point> edge_probes(const std::vector<Point>& centers, double radius, double area_side, int count) {
  require(count >= 1, "edge_probes: count must be positive");
  require(!centers.empty() && radius > 0.0, "edge_probes: need at least one hovering circle");
  constexpr int kAngles = 64;
  constexpr double eps = 1e-9;
  std::vector<Point> candidates;
  for (int a = 0; a < kAngles; ++a) {
    const double t = 2.0 * kPi * (a + 0.5) / kAngles;
    for (const auto& c : centers) {
      const Point p{c.x + radius * std::cos(t), c.y + radius * std::sin(t)};
      if (p.x >= -eps && p.x <= area_side + eps && p.y >= -eps && p.y <= area_side + eps) candidates.push_back(p);
    }
  }
  require(!candidates.empty(), "edge_probes: no circle boundary inside the field");
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(candidates[static_cast<std::size_t>(i) * candidates.size() / count]);
  }
  return out;
}

MissionSimStats simulate_estimation_mission(const MissionSimConfig& config) {
  require(config.replications >= 1, "mission simulation: replications must be >= 1");
  require(config.slots_per_location >= 0, "mission simulation: slots must be non-negative");
  require(config.radius > 0.0 && config.area_side > 0.0, "mission simulation: radius and side must be positive");
  config.radio.validate();
  config.cov.validate();
  const auto geom = channel::HoverGeometry::make(config.radius, config.altitude, config.density);

  MissionSimStats out;
  out.probes = edge_probes(config.centers, config.radius, config.area_side, config.probes);
  const int n = config.replications;
  out.posterior_mse.assign(n, 0.0);
  out.squared_error.assign(n, 0.0);
  out.observations.assign(n, 0);

  parallel_for(n, config.threads, [&](int rep) {
    Rng rng = substream(config.seed, 0x3155, static_cast<std::uint64_t>(rep));
    const auto nodes = sample_ppp(Square{{}, config.area_side}, config.density, rng);
    std::vector<char> heard(nodes.size(), 0);
    std::vector<int> source(nodes.size(), -1);
    for (std::size_t h = 0; h < config.centers.size(); ++h) {
      std::vector<int> index;
      std::vector<Point> local;
      const double r2 = config.radius * config.radius;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (squared_distance(nodes[i], config.centers[h]) <= r2) {
          index.push_back(static_cast<int>(i));
          local.push_back(nodes[i]);
        }
      }
      for (int s = 0; s < config.slots_per_location; ++s) {
        const SlotOutcome o = run_aloha_slot(local, config.centers[h], geom, config.radio, rng);
        if (!o.success) continue;
        const int who = index[o.winner];
        if (!heard[who]) source[who] = static_cast<int>(h);
        heard[who] = 1;
      }
    }
    // The field only matters at received locations and probes; drawing it
    // there gives the same joint law as drawing it at every node.
    std::vector<Point> joint;
    std::vector<int> owner;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (heard[i]) {
        joint.push_back(nodes[i]);
        owner.push_back(static_cast<int>(i));
      }
    }
    const std::size_t observed = joint.size();
    joint.insert(joint.end(), out.probes.begin(), out.probes.end());
    const auto values = field::sample_field(joint, config.cov, rng);
    field::ObservationSet obs;
    for (std::size_t i = 0; i < observed; ++i) obs.add(joint[i], values[i], source[owner[i]]);
    const auto k = field::krige(obs, out.probes, config.cov);
    double var = 0.0, sq = 0.0;
    for (std::size_t p = 0; p < out.probes.size(); ++p) {
      var += k.mse[p];
      const double err = k.estimates[p] - values[observed + p];
      sq += err * err;
    }
    out.posterior_mse[rep] = var / out.probes.size();
    out.squared_error[rep] = sq / out.probes.size();
    out.observations[rep] = static_cast<int>(obs.size());
  });
  return out;
}

}  // namespace hoverplan::simkit
