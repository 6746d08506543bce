#include "hoverplan/simkit/ppp.hpp"

#include <cmath>

namespace hoverplan::simkit {

Rng substream(std::uint64_t root, std::uint64_t stream, std::uint64_t sub) {
  std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(sub), static_cast<std::uint32_t>(sub >> 32)};
  return Rng(seq);
}

namespace {

std::size_t poisson_count(double mean, Rng& rng) {
  require(mean >= 0.0 && std::isfinite(mean), "sample_ppp: lambda must be non-negative");
  if (mean == 0.0) return 0;
  std::poisson_distribution<long long> count(mean);
  return static_cast<std::size_t>(count(rng));
}

}  // namespace

std::vector<Point> sample_ppp(const Disk& region, double lambda, Rng& rng) {
  require(region.radius >= 0.0, "sample_ppp: negative disk radius");
  const std::size_t n = poisson_count(lambda * region.area(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = region.radius * std::sqrt(unit(rng));
    const double t = 2.0 * kPi * unit(rng);
    pts.push_back({region.center.x + r * std::cos(t), region.center.y + r * std::sin(t)});
  }
  return pts;
}

std::vector<Point> sample_ppp(const Square& region, double lambda, Rng& rng) {
  require(region.side >= 0.0, "sample_ppp: negative square side");
  const std::size_t n = poisson_count(lambda * region.area(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = region.origin.x + region.side * unit(rng);
    const double y = region.origin.y + region.side * unit(rng);
    pts.push_back({x, y});
  }
  return pts;
}

std::vector<Point> sample_ppp(const Disk& region, double lambda, std::uint64_t seed) {
  Rng rng = substream(seed, 0);
  return sample_ppp(region, lambda, rng);
}

std::vector<Point> sample_ppp(const Square& region, double lambda, std::uint64_t seed) {
  Rng rng = substream(seed, 0);
  return sample_ppp(region, lambda, rng);
}

}  // namespace hoverplan::simkit
