#include "hoverplan/geometry/tsp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace hoverplan::geometry {

Tour make_tour(std::span<const Point> centers, Point depot, std::vector<int> order) {
  Tour tour;
  tour.depot = depot;
  tour.order = std::move(order);
  tour.hop_distances.reserve(tour.order.size() + 1);
  Point at = depot;
  for (int idx : tour.order) {
    const Point& next = centers[static_cast<std::size_t>(idx)];
    tour.hop_distances.push_back(distance(at, next));
    at = next;
  }
  tour.hop_distances.push_back(distance(at, depot));
  tour.total_distance = std::accumulate(tour.hop_distances.begin(), tour.hop_distances.end(), 0.0);
  return tour;
}

Tour held_karp_tour(std::span<const Point> centers, Point depot) {
  const int n = static_cast<int>(centers.size());
  require(n >= 1 && n <= 18, "held_karp_tour: supports 1..18 centers");
  const std::size_t full = std::size_t{1} << n;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // cost[mask * n + j]: shortest path from depot through `mask`, ending at j.
  std::vector<double> cost(full * static_cast<std::size_t>(n), kInf);
  std::vector<std::int8_t> parent(full * static_cast<std::size_t>(n), -1);
  auto at = [n](std::size_t mask, int j) { return mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(j); };

  for (int j = 0; j < n; ++j) cost[at(std::size_t{1} << j, j)] = distance(depot, centers[static_cast<std::size_t>(j)]);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (int j = 0; j < n; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const double base = cost[at(mask, j)];
      if (base == kInf) continue;
      for (int k = 0; k < n; ++k) {
        if (mask & (std::size_t{1} << k)) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const double c = base + distance(centers[static_cast<std::size_t>(j)], centers[static_cast<std::size_t>(k)]);
        if (c < cost[at(next, k)]) {
          cost[at(next, k)] = c;
          parent[at(next, k)] = static_cast<std::int8_t>(j);
        }
      }
    }
  }

  const std::size_t all = full - 1;
  int last = 0;
  double best = kInf;
  for (int j = 0; j < n; ++j) {
    const double c = cost[at(all, j)] + distance(centers[static_cast<std::size_t>(j)], depot);
    if (c < best) {
      best = c;
      last = j;
    }
  }
  std::vector<int> order;
  std::size_t mask = all;
  for (int j = last; j >= 0;) {
    order.push_back(j);
    const int prev = parent[at(mask, j)];
    mask &= ~(std::size_t{1} << j);
    j = prev;
  }
  std::reverse(order.begin(), order.end());
  return make_tour(centers, depot, std::move(order));
}

Tour nearest_neighbor_tour(std::span<const Point> centers, Point depot, int first) {
  const int n = static_cast<int>(centers.size());
  require(first >= 0 && first < n, "nearest_neighbor_tour: bad first index");
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> order{first};
  used[static_cast<std::size_t>(first)] = true;
  for (int step = 1; step < n; ++step) {
    const Point& cur = centers[static_cast<std::size_t>(order.back())];
    int pick = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      const double d = distance(cur, centers[static_cast<std::size_t>(k)]);
      if (d < best) {
        best = d;
        pick = k;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    order.push_back(pick);
  }
  return make_tour(centers, depot, std::move(order));
}

Tour two_opt(std::span<const Point> centers, Tour tour) {
  // Work on the closed sequence with the depot at position 0.
  std::vector<Point> seq;
  seq.reserve(tour.order.size() + 1);
  seq.push_back(tour.depot);
  for (int idx : tour.order) seq.push_back(centers[static_cast<std::size_t>(idx)]);
  std::vector<int> ids{-1};
  ids.insert(ids.end(), tour.order.begin(), tour.order.end());

  const std::size_t n = seq.size();
  bool improved = n >= 4;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        const std::size_t jn = (j + 1) % n;
        if (jn == i) continue;
        const double before = distance(seq[i], seq[i + 1]) + distance(seq[j], seq[jn]);
        const double after = distance(seq[i], seq[j]) + distance(seq[i + 1], seq[jn]);
        if (after < before - 1e-12) {
          std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(i + 1), seq.begin() + static_cast<std::ptrdiff_t>(j + 1));
          std::reverse(ids.begin() + static_cast<std::ptrdiff_t>(i + 1), ids.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
        }
      }
    }
  }
  return make_tour(centers, tour.depot, std::vector<int>(ids.begin() + 1, ids.end()));
}

Tour solve_tsp(std::span<const Point> centers, Point depot, const TspOptions& options) {
  require(!centers.empty(), "solve_tsp: need at least one center");
  const int n = static_cast<int>(centers.size());
  if (n <= options.exact_limit) return held_karp_tour(centers, depot);

  // Starts: the center nearest the depot, then indices spread around it.
  int nearest = 0;
  for (int k = 1; k < n; ++k) {
    if (distance(depot, centers[static_cast<std::size_t>(k)]) <
        distance(depot, centers[static_cast<std::size_t>(nearest)])) {
      nearest = k;
    }
  }
  const int wanted = std::clamp(options.heuristic_starts, 1, n);
  std::vector<int> starts;
  for (int s = 0; s < wanted; ++s) {
    const int idx = (nearest + (s * n) / wanted) % n;
    if (std::find(starts.begin(), starts.end(), idx) == starts.end()) starts.push_back(idx);
  }

  Tour best;
  best.total_distance = std::numeric_limits<double>::infinity();
  for (int s : starts) {
    Tour t = two_opt(centers, nearest_neighbor_tour(centers, depot, s));
    if (t.total_distance < best.total_distance - 1e-12) best = std::move(t);
  }
  return best;
}

}  // namespace hoverplan::geometry
