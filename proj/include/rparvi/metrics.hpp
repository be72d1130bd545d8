#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rparvi {

// Sample-quality summary of a particle cloud.
struct MetricsReport {
  std::vector<double> mean;        // d
  std::vector<double> covariance;  // row-major d x d, unbiased
  std::optional<std::vector<double>> ks_per_dim;  // vs analytic marginals
  std::optional<double> mmd_squared;              // vs a reference sample
  std::optional<std::vector<double>> mode_occupancy;

  nlohmann::json to_json() const;
};

/// Arithmetic mean and unbiased covariance (divisor n - 1) of an n x d sample
/// array. Requires n >= 2.
std::pair<std::vector<double>, std::vector<double>> sample_moments(
    std::span<const double> samples, int n, int d);

/// Sup-norm distance between the empirical CDF of `samples` and `cdf`.
double ks_statistic_1d(std::vector<double> samples,
                       const std::function<double(double)>& cdf);

/// Unbiased U-statistic MMD^2 with RBF kernel exp(-|a-b|^2 / (2 h^2)) between
/// an n x d and an m x d sample array. Without an explicit bandwidth, h is the
/// median pairwise distance over the pooled points (throws "zero bandwidth"
/// when that median is 0). May be slightly negative. Kernel sums accumulate in
/// sorted order, so the estimate is invariant under swapping X and Y.
double mmd_squared(std::span<const double> x, int n, std::span<const double> y,
                   int m, int d, std::optional<double> bandwidth = std::nullopt);

/// Fraction of samples within `radius` of each center; each sample counts only
/// toward its nearest center, so the fractions sum to at most 1.
std::vector<double> mode_occupancy(std::span<const double> samples, int n,
                                   int d,
                                   const std::vector<std::vector<double>>& centers,
                                   double radius);

/// Gaussian-kernel density estimate on `grid`. Without an explicit bandwidth
/// uses Silverman's rule h = 1.06 * sd * n^(-1/5) (throws on zero sample
/// variance).
std::vector<double> kde_1d(std::span<const double> samples,
                           std::span<const double> grid,
                           std::optional<double> bandwidth = std::nullopt);

}  // namespace rparvi
