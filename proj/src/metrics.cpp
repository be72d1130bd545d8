#include "rparvi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rparvi {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

std::span<const double> row(std::span<const double> data, int i, int d) {
  return data.subspan(static_cast<std::size_t>(i) * d,
                      static_cast<std::size_t>(d));
}

double sorted_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json j;
  j["mean"] = mean;
  const auto d = mean.size();
  nlohmann::json cov = nlohmann::json::array();
  for (std::size_t i = 0; i < d; ++i) {
    nlohmann::json rowj = nlohmann::json::array();
    for (std::size_t k = 0; k < d; ++k) rowj.push_back(covariance[i * d + k]);
    cov.push_back(rowj);
  }
  j["covariance"] = cov;
  if (ks_per_dim) j["ks_per_dim"] = *ks_per_dim;
  if (mmd_squared) j["mmd_squared"] = *mmd_squared;
  if (mode_occupancy) j["mode_occupancy"] = *mode_occupancy;
  return j;
}

std::pair<std::vector<double>, std::vector<double>> sample_moments(
    std::span<const double> samples, int n, int d) {
  if (n < 2) throw std::invalid_argument("sample_moments: need at least 2 samples");
  if (d <= 0 || samples.size() != static_cast<std::size_t>(n) * d)
    throw std::invalid_argument("sample_moments: shape mismatch");

  std::vector<double> mean(d, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto xi = row(samples, i, d);
    for (int k = 0; k < d; ++k) mean[k] += xi[k];
  }
  for (int k = 0; k < d; ++k) mean[k] /= n;

  std::vector<double> cov(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto xi = row(samples, i, d);
    for (int a = 0; a < d; ++a) {
      const double da = xi[a] - mean[a];
      for (int b = 0; b < d; ++b) {
        cov[static_cast<std::size_t>(a) * d + b] += da * (xi[b] - mean[b]);
      }
    }
  }
  for (double& c : cov) c /= (n - 1);
  return {std::move(mean), std::move(cov)};
}

double ks_statistic_1d(std::vector<double> samples,
                       const std::function<double(double)>& cdf) {
  if (samples.empty())
    throw std::invalid_argument("ks_statistic_1d: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    stat = std::max(stat, (static_cast<double>(i) + 1.0) / n - f);
    stat = std::max(stat, f - static_cast<double>(i) / n);
  }
  return stat;
}

double mmd_squared(std::span<const double> x, int n, std::span<const double> y,
                   int m, int d, std::optional<double> bandwidth) {
  if (n < 2 || m < 2)
    throw std::invalid_argument("mmd_squared: need at least 2 samples per set");
  if (d <= 0 || x.size() != static_cast<std::size_t>(n) * d ||
      y.size() != static_cast<std::size_t>(m) * d)
    throw std::invalid_argument("mmd_squared: shape mismatch");

  double h = 0.0;
  if (bandwidth) {
    h = *bandwidth;
    if (!(h > 0.0)) throw std::invalid_argument("mmd_squared: zero bandwidth");
  } else {
    // Median pairwise distance over the pooled sample. The pooled multiset of
    // distances does not depend on argument order.
    std::vector<double> pooled;
    pooled.reserve(static_cast<std::size_t>(n + m) * d);
    pooled.insert(pooled.end(), x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    const int total = n + m;
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(total) * (total - 1) / 2);
    for (int i = 0; i < total; ++i) {
      for (int j = i + 1; j < total; ++j) {
        dists.push_back(
            std::sqrt(squared_distance(row(pooled, i, d), row(pooled, j, d))));
      }
    }
    std::sort(dists.begin(), dists.end());
    const std::size_t count = dists.size();
    h = (count % 2 == 1) ? dists[count / 2]
                         : 0.5 * (dists[count / 2 - 1] + dists[count / 2]);
    if (!(h > 0.0)) throw std::invalid_argument("mmd_squared: zero bandwidth");
  }

  const double inv_two_h_sq = 1.0 / (2.0 * h * h);
  auto kernel = [inv_two_h_sq](std::span<const double> a,
                               std::span<const double> b) {
    return std::exp(-squared_distance(a, b) * inv_two_h_sq);
  };

  std::vector<double> xx;
  xx.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) xx.push_back(kernel(row(x, i, d), row(x, j, d)));

  std::vector<double> yy;
  yy.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) yy.push_back(kernel(row(y, i, d), row(y, j, d)));

  std::vector<double> xy;
  xy.reserve(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) xy.push_back(kernel(row(x, i, d), row(y, j, d)));

  const double term_x = 2.0 * sorted_sum(xx) / (static_cast<double>(n) * (n - 1));
  const double term_y = 2.0 * sorted_sum(yy) / (static_cast<double>(m) * (m - 1));
  const double cross = 2.0 * sorted_sum(xy) / (static_cast<double>(n) * m);
  return term_x + term_y - cross;
}

std::vector<double> mode_occupancy(std::span<const double> samples, int n,
                                   int d,
                                   const std::vector<std::vector<double>>& centers,
                                   double radius) {
  if (centers.empty())
    throw std::invalid_argument("mode_occupancy: centers must be nonempty");
  if (!(radius > 0.0))
    throw std::invalid_argument("mode_occupancy: radius must be positive");
  for (const auto& c : centers) {
    if (c.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("mode_occupancy: center dimension mismatch");
  }

  std::vector<double> counts(centers.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto xi = row(samples, i, d);
    std::size_t best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double sq = squared_distance(xi, centers[c]);
      if (sq < best_sq) {
        best_sq = sq;
        best = c;
      }
    }
    if (std::sqrt(best_sq) <= radius) counts[best] += 1.0;
  }
  for (double& c : counts) c /= n;
  return counts;
}

std::vector<double> kde_1d(std::span<const double> samples,
                           std::span<const double> grid,
                           std::optional<double> bandwidth) {
  if (samples.empty()) throw std::invalid_argument("kde_1d: empty sample");
  const double n = static_cast<double>(samples.size());

  double h = 0.0;
  if (bandwidth) {
    h = *bandwidth;
    if (!(h > 0.0)) throw std::invalid_argument("kde_1d: bandwidth must be positive");
  } else {
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= n;
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var = samples.size() > 1 ? var / (n - 1.0) : 0.0;
    if (!(var > 0.0))
      throw std::invalid_argument("kde_1d: zero sample variance");
    h = 1.06 * std::sqrt(var) * std::pow(n, -0.2);
  }

  const double norm = 1.0 / (n * h * std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> out;
  out.reserve(grid.size());
  for (double g : grid) {
    double acc = 0.0;
    for (double s : samples) {
      const double z = (g - s) / h;
      acc += std::exp(-0.5 * z * z);
    }
    out.push_back(norm * acc);
  }
  return out;
}

}  // namespace rparvi
