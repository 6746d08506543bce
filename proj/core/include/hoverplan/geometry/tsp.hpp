#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hoverplan/types.hpp"

namespace hoverplan::geometry {

// Closed route depot -> centers[order[0]] -> ... -> centers[order.back()] -> depot.
struct Tour {
  Point depot;
  std::vector<int> order;            // indices into the center list, each once
  std::vector<double> hop_distances; // order.size() + 1 legs, depot legs included
  double total_distance = 0.0;

  int stops() const { return static_cast<int>(order.size()); }
};

// Fills hop distances and total for the given visiting order.
Tour make_tour(std::span<const Point> centers, Point depot, std::vector<int> order);

struct TspOptions {
  // Largest instance (number of centers) solved exactly by Held-Karp.
  int exact_limit = 15;
  int heuristic_starts = 10;
};

// Shortest closed tour through the depot and every center: exact dynamic
// programming up to `exact_limit` centers, multi-start nearest neighbour plus
// 2-opt beyond that.
Tour solve_tsp(std::span<const Point> centers, Point depot, const TspOptions& options = {});

// Building blocks, exposed for testing.
Tour held_karp_tour(std::span<const Point> centers, Point depot);
Tour nearest_neighbor_tour(std::span<const Point> centers, Point depot, int first);
Tour two_opt(std::span<const Point> centers, Tour tour);

// Min-max multi-depot multi-TSP. `tour_cost` scores one UAV's tour (defaults
// to its length); the heuristic minimizes the largest cost over UAVs.
struct MdmtspOptions {
  std::function<double(const Tour&)> tour_cost;
  TspOptions tsp;
  int max_rounds = 200;
};

struct MdmtspResult {
  std::vector<Tour> tours;   // one per UAV; UAV k flies from depots[k % depots.size()]
  std::vector<double> costs;
  int bottleneck = 0;        // index of the UAV with the largest cost
  double max_cost = 0.0;
};

MdmtspResult solve_minmax_mdmtsp(std::span<const Point> centers, std::span<const Point> depots, int K,
                                 const MdmtspOptions& options = {});

}  // namespace hoverplan::geometry
