#include "hoverplan/field/kriging.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <string>

namespace hoverplan::field {

bool ObservationSet::add(const Point& location, double value, int source) {
  constexpr double tol2 = kMergeDistance * kMergeDistance;
  for (const auto& p : locations_) {
    if (squared_distance(p, location) <= tol2) return false;
  }
  locations_.push_back(location);
  values_.push_back(value);
  sources_.push_back(source);
  return true;
}

namespace {

Eigen::MatrixXd covariance_matrix(std::span<const Point> pts, const CovarianceSpec& spec) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = spec.sigma2 + jitter(spec);
    for (Eigen::Index j = 0; j < i; ++j) {
      k(i, j) = k(j, i) = covariance(spec, pts[i], pts[j]);
    }
  }
  return k;
}

Eigen::MatrixXd cross_covariance(std::span<const Point> rows, std::span<const Point> cols, const CovarianceSpec& spec) {
  Eigen::MatrixXd k(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = covariance(spec, rows[i], cols[j]);
    }
  }
  return k;
}

Eigen::LLT<Eigen::MatrixXd> factor(const Eigen::MatrixXd& k, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) {
    throw DegenerateInput(std::string(what) + ": covariance matrix not positive definite after jitter");
  }
  return llt;
}

}  // namespace

KrigingResult krige(const ObservationSet& obs, std::span<const Point> targets, const CovarianceSpec& spec,
                    double mean) {
  spec.validate();
  KrigingResult out;
  if (obs.empty()) {
    out.estimates.assign(targets.size(), mean);
    out.mse.assign(targets.size(), spec.sigma2);
    return out;
  }
  const auto llt = factor(covariance_matrix(obs.locations(), spec), "krige");
  const Eigen::MatrixXd k_ot = cross_covariance(obs.locations(), targets, spec);
  const Eigen::MatrixXd weights = llt.solve(k_ot);
  Eigen::VectorXd centered(static_cast<Eigen::Index>(obs.size()));
  for (std::size_t i = 0; i < obs.size(); ++i) centered(static_cast<Eigen::Index>(i)) = obs.values()[i] - mean;

  out.estimates.resize(targets.size());
  out.mse.resize(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto col = static_cast<Eigen::Index>(t);
    out.estimates[t] = mean + weights.col(col).dot(centered);
    const double var = spec.sigma2 - k_ot.col(col).dot(weights.col(col));
    out.mse[t] = std::clamp(var, 0.0, spec.sigma2);
  }
  return out;
}

std::vector<double> kriging_variance(std::span<const Point> observed, std::span<const Point> targets,
                                     const CovarianceSpec& spec) {
  spec.validate();
  if (observed.empty()) return std::vector<double>(targets.size(), spec.sigma2);
  const auto llt = factor(covariance_matrix(observed, spec), "kriging_variance");
  const Eigen::MatrixXd k_ot = cross_covariance(observed, targets, spec);
  // sigma2 - k' K^-1 k = sigma2 - |L^-1 k|^2
  const Eigen::MatrixXd half = llt.matrixL().solve(k_ot);
  std::vector<double> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    out[t] = std::clamp(spec.sigma2 - half.col(static_cast<Eigen::Index>(t)).squaredNorm(), 0.0, spec.sigma2);
  }
  return out;
}

std::vector<double> sample_field(std::span<const Point> locations, const CovarianceSpec& spec, std::mt19937_64& rng) {
  spec.validate();
  require(locations.size() <= kMaxSampleLocations,
          "sample_field: at most " + std::to_string(kMaxSampleLocations) +
              " locations per draw; tile larger fields into independent blocks");
  if (locations.empty()) return {};
  const auto llt = factor(covariance_matrix(locations, spec), "sample_field");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(locations.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  const Eigen::VectorXd draw = llt.matrixL() * z;
  return {draw.data(), draw.data() + draw.size()};
}

std::vector<double> sample_field(std::span<const Point> locations, const CovarianceSpec& spec, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x6669u};
  std::mt19937_64 rng(seq);
  return sample_field(locations, spec, rng);
}

}  // namespace hoverplan::field
