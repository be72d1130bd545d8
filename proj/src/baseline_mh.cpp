#include "rparvi/baseline_mh.hpp"

#include <cmath>
#include <stdexcept>

#include "rparvi/parallel.hpp"
#include "rparvi/random_stream.hpp"

namespace rparvi {

namespace {

// Domain separation from the particle-engine streams, so sharing a seed with
// an R-ParVI run never replays the same variates.
constexpr std::uint64_t kMhSeedTag = 0x6d682d636861696eull;

}  // namespace

void check_mh_config(const MhConfig& cfg) {
  if (cfg.num_chains <= 0)
    throw std::invalid_argument("num_chains must be positive");
  if (cfg.steps <= 0) throw std::invalid_argument("steps must be positive");
  if (!(cfg.proposal_std > 0.0) || !std::isfinite(cfg.proposal_std))
    throw std::invalid_argument("proposal_std must be positive");
  if (cfg.burn_in < 0 || cfg.burn_in >= cfg.steps)
    throw std::invalid_argument("burn_in must be nonnegative and below steps");
  if (!(cfg.bound > 0.0) || !std::isfinite(cfg.bound))
    throw std::invalid_argument("bound must be positive");
  if (cfg.thin < 0) throw std::invalid_argument("thin must be nonnegative");
}

MhSamples mh_run(const MhConfig& cfg, const TargetDensity& target,
                 int workers) {
  check_mh_config(cfg);
  const int d = target.dim();
  const std::uint64_t root = cfg.seed ^ kMhSeedTag;

  MhSamples out;
  out.dim = d;
  out.final_states.resize(static_cast<std::size_t>(cfg.num_chains) * d);

  // Kept steps per chain are s = burn_in + thin, burn_in + 2*thin, ... <= steps.
  const int kept = cfg.thin > 0 ? (cfg.steps - cfg.burn_in) / cfg.thin : 0;
  if (cfg.thin > 0)
    out.thinned.resize(static_cast<std::size_t>(cfg.num_chains) * kept * d);

  detail::parallel_for(cfg.num_chains, detail::resolve_workers(workers), [&](int c) {
    RandomStream init_rng(root, static_cast<std::uint64_t>(c), 0);
    std::vector<double> state(d);
    for (int k = 0; k < d; ++k)
      state[k] = init_rng.uniform(-cfg.bound, cfg.bound);

    int kept_count = 0;
    for (int s = 1; s <= cfg.steps; ++s) {
      RandomStream rng(root, static_cast<std::uint64_t>(c),
                       static_cast<std::uint64_t>(s));
      state = mh_step(state, target, cfg.proposal_std, rng);
      if (cfg.thin > 0 && s > cfg.burn_in && (s - cfg.burn_in) % cfg.thin == 0) {
        double* dst = out.thinned.data() +
                      (static_cast<std::size_t>(c) * kept + kept_count) * d;
        std::copy(state.begin(), state.end(), dst);
        ++kept_count;
      }
    }
    std::copy(state.begin(), state.end(),
              out.final_states.data() + static_cast<std::size_t>(c) * d);
  });
  return out;
}

}  // namespace rparvi
