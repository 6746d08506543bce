#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hoverplan/geometry/tsp.hpp"

namespace hoverplan::geometry {

namespace {

using Groups = std::vector<std::vector<int>>;

struct Evaluated {
  Groups groups;
  std::vector<Tour> tours;
  std::vector<double> costs;
  double max_cost = 0.0;
  double sum_cost = 0.0;

  // Lexicographic (max, sum) with a small tolerance on the max.
  bool better_than(const Evaluated& other) const {
    if (max_cost < other.max_cost - 1e-9) return true;
    if (max_cost > other.max_cost + 1e-9) return false;
    return sum_cost < other.sum_cost - 1e-9;
  }
};

class Planner {
 public:
  Planner(std::span<const Point> centers, std::span<const Point> depots, int K, const MdmtspOptions& options)
      : centers_(centers), depots_(depots), K_(K), options_(options) {}

  Point depot_of(int k) const { return depots_[static_cast<std::size_t>(k) % depots_.size()]; }

  Tour route(int k, const std::vector<int>& members) const {
    if (members.empty()) return make_tour(centers_, depot_of(k), {});
    std::vector<Point> sub;
    sub.reserve(members.size());
    for (int idx : members) sub.push_back(centers_[static_cast<std::size_t>(idx)]);
    Tour local = solve_tsp(sub, depot_of(k), options_.tsp);
    std::vector<int> order;
    order.reserve(local.order.size());
    for (int i : local.order) order.push_back(members[static_cast<std::size_t>(i)]);
    return make_tour(centers_, depot_of(k), std::move(order));
  }

  double cost(const Tour& t) const {
    return options_.tour_cost ? options_.tour_cost(t) : t.total_distance;
  }

  Evaluated evaluate(Groups groups) const {
    Evaluated e;
    e.groups = std::move(groups);
    for (int k = 0; k < K_; ++k) {
      e.tours.push_back(route(k, e.groups[static_cast<std::size_t>(k)]));
      e.costs.push_back(cost(e.tours.back()));
    }
    refresh(e);
    return e;
  }

  static void refresh(Evaluated& e) {
    e.max_cost = *std::max_element(e.costs.begin(), e.costs.end());
    e.sum_cost = std::accumulate(e.costs.begin(), e.costs.end(), 0.0);
  }

  // Angular sweep around the depot centroid, cut into K count-balanced arcs.
  std::vector<Groups> sweep_partitions() const {
    Point hub{0.0, 0.0};
    for (const Point& d : depots_) {
      hub.x += d.x / static_cast<double>(depots_.size());
      hub.y += d.y / static_cast<double>(depots_.size());
    }
    const int n = static_cast<int>(centers_.size());
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      const Point& pa = centers_[static_cast<std::size_t>(a)];
      const Point& pb = centers_[static_cast<std::size_t>(b)];
      return std::atan2(pa.y - hub.y, pa.x - hub.x) < std::atan2(pb.y - hub.y, pb.x - hub.x);
    });
    std::vector<Groups> out;
    for (int offset = 0; offset < n; ++offset) {
      Groups g(static_cast<std::size_t>(K_));
      int pos = 0;
      for (int k = 0; k < K_; ++k) {
        const int size = n / K_ + (k < n % K_ ? 1 : 0);
        for (int s = 0; s < size; ++s, ++pos) {
          g[static_cast<std::size_t>(k)].push_back(idx[static_cast<std::size_t>((pos + offset) % n)]);
        }
      }
      out.push_back(assign_depots(std::move(g)));
    }
    return out;
  }

  // With several depots, give each group to the UAV whose depot is closest to
  // the group's centroid (greedy, one group per UAV).
  Groups assign_depots(Groups groups) const {
    if (depots_.size() <= 1) return groups;
    Groups out(static_cast<std::size_t>(K_));
    std::vector<bool> taken(static_cast<std::size_t>(K_), false);
    for (auto& g : groups) {
      Point c{0.0, 0.0};
      for (int i : g) {
        c.x += centers_[static_cast<std::size_t>(i)].x / static_cast<double>(g.size());
        c.y += centers_[static_cast<std::size_t>(i)].y / static_cast<double>(g.size());
      }
      int pick = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < K_; ++k) {
        if (taken[static_cast<std::size_t>(k)]) continue;
        const double d = distance(c, depot_of(k));
        if (d < best) {
          best = d;
          pick = k;
        }
      }
      taken[static_cast<std::size_t>(pick)] = true;
      out[static_cast<std::size_t>(pick)] = std::move(g);
    }
    return out;
  }

  // Relocations and swaps involving the bottleneck UAV, first improvement.
  bool improve(Evaluated& e) const {
    const int b = static_cast<int>(std::max_element(e.costs.begin(), e.costs.end()) - e.costs.begin());
    const auto& from = e.groups[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < from.size(); ++i) {
      for (int k = 0; k < K_; ++k) {
        if (k == b) continue;
        if (from.size() > 1 && try_move(e, b, i, k)) return true;
        for (std::size_t j = 0; j < e.groups[static_cast<std::size_t>(k)].size(); ++j) {
          if (try_swap(e, b, i, k, j)) return true;
        }
      }
    }
    return false;
  }

  bool accept(Evaluated& e, int a, std::vector<int> ga, int b, std::vector<int> gb) const {
    Evaluated trial = e;
    trial.groups[static_cast<std::size_t>(a)] = std::move(ga);
    trial.groups[static_cast<std::size_t>(b)] = std::move(gb);
    for (int k : {a, b}) {
      trial.tours[static_cast<std::size_t>(k)] = route(k, trial.groups[static_cast<std::size_t>(k)]);
      trial.costs[static_cast<std::size_t>(k)] = cost(trial.tours[static_cast<std::size_t>(k)]);
    }
    refresh(trial);
    if (!trial.better_than(e)) return false;
    e = std::move(trial);
    return true;
  }

  bool try_move(Evaluated& e, int b, std::size_t i, int k) const {
    auto gb = e.groups[static_cast<std::size_t>(b)];
    auto gk = e.groups[static_cast<std::size_t>(k)];
    gk.push_back(gb[i]);
    gb.erase(gb.begin() + static_cast<std::ptrdiff_t>(i));
    return accept(e, b, std::move(gb), k, std::move(gk));
  }

  bool try_swap(Evaluated& e, int b, std::size_t i, int k, std::size_t j) const {
    auto gb = e.groups[static_cast<std::size_t>(b)];
    auto gk = e.groups[static_cast<std::size_t>(k)];
    std::swap(gb[i], gk[j]);
    return accept(e, b, std::move(gb), k, std::move(gk));
  }

  MdmtspResult solve() const {
    std::vector<Evaluated> starts;
    for (auto& g : sweep_partitions()) starts.push_back(evaluate(std::move(g)));
    std::stable_sort(starts.begin(), starts.end(),
                     [](const Evaluated& a, const Evaluated& b) { return a.better_than(b); });
    // Polish the most promising sweeps.
    const std::size_t polish = std::min<std::size_t>(starts.size(), 6);
    Evaluated best = starts.front();
    for (std::size_t s = 0; s < polish; ++s) {
      Evaluated e = starts[s];
      for (int round = 0; round < options_.max_rounds && improve(e); ++round) {
      }
      if (e.better_than(best)) best = std::move(e);
    }

    MdmtspResult result;
    result.tours = std::move(best.tours);
    result.costs = std::move(best.costs);
    result.bottleneck =
        static_cast<int>(std::max_element(result.costs.begin(), result.costs.end()) - result.costs.begin());
    result.max_cost = best.max_cost;
    return result;
  }

 private:
  std::span<const Point> centers_;
  std::span<const Point> depots_;
  int K_;
  const MdmtspOptions& options_;
};

}  // namespace

MdmtspResult solve_minmax_mdmtsp(std::span<const Point> centers, std::span<const Point> depots, int K,
                                 const MdmtspOptions& options) {
  require(K >= 1, "solve_minmax_mdmtsp: K must be >= 1");
  require(!depots.empty(), "solve_minmax_mdmtsp: need at least one depot");
  require(static_cast<std::size_t>(K) <= centers.size(),
          "solve_minmax_mdmtsp: K exceeds the number of hovering locations");
  if (K == 1) {
    MdmtspResult r;
    r.tours.push_back(solve_tsp(centers, depots.front(), options.tsp));
    r.costs.push_back(options.tour_cost ? options.tour_cost(r.tours.front()) : r.tours.front().total_distance);
    r.max_cost = r.costs.front();
    return r;
  }
  return Planner(centers, depots, K, options).solve();
}

}  // namespace hoverplan::geometry
