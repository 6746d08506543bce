#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "hoverplan/channel/success.hpp"
#include "hoverplan/field/edge_mse.hpp"
#include "hoverplan/geometry/coverage.hpp"
#include "hoverplan/geometry/tsp.hpp"
#include "hoverplan/quadrature.hpp"

using namespace hoverplan;

namespace {

channel::RadioSpec radio(int m) {
  channel::RadioSpec r;
  r.nakagami_m = m;
  r.aloha_probability = 0.0127;
  return r;
}

std::vector<Point> random_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

}  // namespace

static void BM_QuadraturePeaked(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad::integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0));
  }
}
BENCHMARK(BM_QuadraturePeaked);

static void BM_SuccessProbability(benchmark::State& state) {
  const auto geom = channel::HoverGeometry::make(20.0, 20.0, 0.1);
  const auto r = radio(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(channel::success_probability(geom, r));
}
BENCHMARK(BM_SuccessProbability)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SlotSearch(benchmark::State& state) {
  const auto geom = channel::HoverGeometry::make(20.0, 20.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(field::optimal_slots_estimation(geom, radio(1), {}, 0.2));
}
BENCHMARK(BM_SlotSearch)->Unit(benchmark::kMillisecond);

static void BM_Coverage(benchmark::State& state) {
  geometry::CoverageOptions opts;
  opts.restarts = 5;
  opts.hops_per_restart = 5;
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::solve_coverage(M, 100.0, 1, opts));
}
BENCHMARK(BM_Coverage)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_HeldKarp(benchmark::State& state) {
  const auto pts = random_points(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::held_karp_tour(pts, {50, 50}));
}
BENCHMARK(BM_HeldKarp)->Arg(8)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_TspHeuristic(benchmark::State& state) {
  const auto pts = random_points(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::solve_tsp(pts, {50, 50}));
}
BENCHMARK(BM_TspHeuristic)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
