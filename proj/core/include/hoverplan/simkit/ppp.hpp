#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hoverplan/types.hpp"

namespace hoverplan::simkit {

using Rng = std::mt19937_64;

// Independent generator for (root seed, stream, substream); the same triple
// always yields the same sequence regardless of which thread asks.
Rng substream(std::uint64_t root, std::uint64_t stream, std::uint64_t sub = 0);

struct Disk {
  Point center;
  double radius = 0.0;
  double area() const { return kPi * radius * radius; }
};

struct Square {
  Point origin;  // lower-left corner
  double side = 0.0;
  double area() const { return side * side; }
};

// Homogeneous PPP: Poisson(lambda * area) points, uniform i.i.d.
std::vector<Point> sample_ppp(const Disk& region, double lambda, Rng& rng);
std::vector<Point> sample_ppp(const Square& region, double lambda, Rng& rng);
std::vector<Point> sample_ppp(const Disk& region, double lambda, std::uint64_t seed);
std::vector<Point> sample_ppp(const Square& region, double lambda, std::uint64_t seed);

}  // namespace hoverplan::simkit
