#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hoverplan/field/covariance.hpp"

namespace hoverplan::field {

// Field readings at distinct locations. Readings closer than 1e-9 m to an
// existing location are merged into it (the first reading is kept; sensors
// are noiseless so repeated readings agree).
class ObservationSet {
 public:
  static constexpr double kMergeDistance = 1e-9;

  // Returns false when the reading was merged into an existing location.
  bool add(const Point& location, double value, int source = -1);

  std::size_t size() const { return locations_.size(); }
  bool empty() const { return locations_.empty(); }
  const std::vector<Point>& locations() const { return locations_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<int>& sources() const { return sources_; }

 private:
  std::vector<Point> locations_;
  std::vector<double> values_;
  std::vector<int> sources_;  // originating hovering-location index, -1 if unknown
};

struct KrigingResult {
  std::vector<double> estimates;
  std::vector<double> mse;  // posterior variance, clamped to [0, sigma2]
};

// Simple kriging with a known constant mean.
KrigingResult krige(const ObservationSet& obs, std::span<const Point> targets, const CovarianceSpec& spec,
                    double mean = 0.0);

// Posterior variance only; skips the right-hand side for the values.
std::vector<double> kriging_variance(std::span<const Point> observed, std::span<const Point> targets,
                                     const CovarianceSpec& spec);

inline constexpr std::size_t kMaxSampleLocations = 5000;

// Exact joint draw of the zero-mean field at `locations`.
std::vector<double> sample_field(std::span<const Point> locations, const CovarianceSpec& spec, std::uint64_t seed);
std::vector<double> sample_field(std::span<const Point> locations, const CovarianceSpec& spec, std::mt19937_64& rng);

}  // namespace hoverplan::field
