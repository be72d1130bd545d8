#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace rparvi {

struct MixtureComponent {
  double weight = 1.0;
  std::vector<double> mean;
  double std = 1.0;
};

// Weighted sum of peak-normalized isotropic Gaussian kernels. Weights need not
// sum to 1; the density is unnormalized.
struct MixtureSpec {
  std::vector<MixtureComponent> components;
};

/// Throws std::invalid_argument on an empty component list, nonpositive
/// weights or stds, or mismatched component dimensions.
void validate_mixture_spec(const MixtureSpec& spec);

// Built-in benchmark densities, all unnormalized with peak value 1 per kernel.
double density_gaussian_iso(std::span<const double> x,
                            std::span<const double> mean, double std);
double density_mixture(std::span<const double> x, const MixtureSpec& spec);
double density_banana(std::span<const double> x, double curvature,
                      double scale);
double density_ring(std::span<const double> x, double radius, double width);

// Evaluation contract for an unnormalized target density p(x) >= 0. Evaluation
// must be pure and safe for concurrent calls; the descriptor carries the
// parameters needed to reconstruct the target (echoed into run summaries).
class TargetDensity {
 public:
  using EvalFn = std::function<double(std::span<const double>)>;

  TargetDensity(int dim, std::string kind, nlohmann::json descriptor,
                EvalFn eval);

  double operator()(std::span<const double> x) const { return eval_(x); }
  int dim() const { return dim_; }
  const std::string& kind() const { return kind_; }
  const nlohmann::json& descriptor() const { return descriptor_; }

 private:
  int dim_;
  std::string kind_;
  nlohmann::json descriptor_;
  EvalFn eval_;
};

TargetDensity make_gaussian_target(std::vector<double> mean, double std);
TargetDensity make_mixture_target(MixtureSpec spec);
TargetDensity make_banana_target(double curvature, double scale);
TargetDensity make_ring_target(double radius, double width);

/// Builds a target from a tagged descriptor {"kind": ..., ...}. Supported
/// kinds: gaussian, mixture, banana, ring. `expected_dim` fills in defaults
/// (e.g. a zero mean for gaussian) and is checked against the result.
TargetDensity target_from_json(const nlohmann::json& spec, int expected_dim);

/// Normalized marginal CDF along one axis, when the target admits a closed
/// form (gaussian and mixture kinds). Used for KS diagnostics.
std::optional<std::function<double(double)>> marginal_cdf(
    const TargetDensity& target, int axis);

}  // namespace rparvi
