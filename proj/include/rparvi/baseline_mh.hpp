#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "rparvi/target.hpp"

namespace rparvi {

struct MhConfig {
  int num_chains = 0;
  int steps = 0;
  double proposal_std = 1.0;
  int burn_in = 0;  // must stay below steps
  std::uint64_t seed = 0;
  double bound = 0.0;  // half width of the initialization box
  int thin = 0;        // 0 = final states only; k > 0 also keeps every k-th
                       // post-burn-in state per chain
};

void check_mh_config(const MhConfig& cfg);

struct MhSamples {
  int dim = 0;
  std::vector<double> final_states;  // num_chains x dim, one sample per chain
  std::vector<double> thinned;       // extra kept states, empty when thin == 0
};

template <class R>
concept ProposalSource = requires(R r, double s) {
  { r.normal(s) } -> std::convertible_to<double>;
  { r.uniform() } -> std::convertible_to<double>;
};

/// One random-walk Metropolis step with a symmetric Gaussian proposal. Accepts
/// with probability min(1, p(x')/p(x)); a proposal out of a zero-density state
/// is always accepted when p(x') > 0, and a zero-density proposal from a
/// zero-density state is rejected. Consumes d normals then one uniform.
template <ProposalSource R>
std::vector<double> mh_step(std::span<const double> x,
                            const TargetDensity& target, double proposal_std,
                            R& rng) {
  const std::size_t d = x.size();
  std::vector<double> proposal(d);
  for (std::size_t k = 0; k < d; ++k)
    proposal[k] = x[k] + rng.normal(proposal_std);

  const double p_current = target(x);
  const double p_proposed = target(proposal);
  if (!std::isfinite(p_current) || p_current < 0.0 ||
      !std::isfinite(p_proposed) || p_proposed < 0.0)
    throw std::domain_error("mh_step: density must be finite and nonnegative");

  const double u = rng.uniform();
  const bool accept =
      p_current > 0.0 ? u * p_current < p_proposed : p_proposed > 0.0;
  if (accept) return proposal;
  return std::vector<double>(x.begin(), x.end());
}

/// Runs num_chains independent chains initialized uniform on [-L, L]^d and
/// returns the final state of each (plus thinned states when requested).
/// Deterministic for any worker count via per-(chain, step) keyed streams.
MhSamples mh_run(const MhConfig& cfg, const TargetDensity& target,
                 int workers = 1);

}  // namespace rparvi
