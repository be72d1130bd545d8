#pragma once

#include <cmath>
#include <stdexcept>

namespace rparvi {

// Weights of the composite reward; alpha + beta = 1 by construction.
struct RewardWeights {
  double alpha = 1.0;
  double beta = 0.0;
};

inline RewardWeights reward_weights_from_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in [0, 1]");
  return {alpha, 1.0 - alpha};
}

/// Pointwise diversity term -p * ln(p), with the limit convention that the
/// result is exactly 0 for p <= 1e-300. Throws std::domain_error for negative
/// or non-finite p.
inline double entropy_term(double p) {
  if (!std::isfinite(p) || p < 0.0)
    throw std::domain_error("entropy_term: density must be finite and nonnegative");
  if (p <= 1e-300) return 0.0;
  return -p * std::log(p);
}

/// Composite reward alpha * p + beta * (-p * ln p). The diversity term is
/// evaluated first so invalid densities are rejected before any arithmetic.
inline double reward(double p, const RewardWeights& w) {
  const double diversity = entropy_term(p);
  return w.alpha * p + w.beta * diversity;
}

}  // namespace rparvi
