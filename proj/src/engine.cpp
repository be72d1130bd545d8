#include "rparvi/engine.hpp"

#include <algorithm>
#include <utility>

#include "rparvi/parallel.hpp"
#include "rparvi/random_stream.hpp"

namespace rparvi {

std::pair<ParticleSystem, double> step_system(const ParticleSystem& sys,
                                              const TargetDensity& target,
                                              const Hyperparameters& hp,
                                              const RunOptions& opts) {
  const int m = sys.num_particles;
  const int t = sys.iteration + 1;

  ParticleSystem next = sys;
  next.iteration = t;
  std::vector<double> rewards(m, 0.0);

  const int workers = detail::resolve_workers(opts.num_workers);
  detail::parallel_for(m, workers, [&](int p) {
    try {
      RandomStream rng(hp.seed, static_cast<std::uint64_t>(p),
                       static_cast<std::uint64_t>(t));
      StepOutcome out = step_particle(sys.position(p), sys.velocity(p), target,
                                      hp, rng, !opts.cheap_history);
      std::copy(out.new_position.begin(), out.new_position.end(),
                next.position(p).begin());
      std::copy(out.new_velocity.begin(), out.new_velocity.end(),
                next.velocity(p).begin());
      rewards[p] = out.reward_at_new_position;
    } catch (const NumericError&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericError(p, t, e.what());
    }
  });

  // Fixed-order reduction keeps the mean independent of the worker layout.
  double sum = 0.0;
  for (int p = 0; p < m; ++p) sum += rewards[p];
  return {std::move(next), sum / m};
}

RunResult run(const Hyperparameters& hp, const TargetDensity& target,
              const RunOptions& opts) {
  check_hyperparameters(hp);
  if (target.dim() != hp.dim) {
    throw std::invalid_argument("target dimension " +
                                std::to_string(target.dim()) +
                                " does not match dim " + std::to_string(hp.dim));
  }

  RunResult result;
  result.final_system = init_particles(hp);
  result.history.mean_rewards.reserve(hp.num_iterations);
  if (hp.record_trajectory) {
    result.trajectory.emplace();
    result.trajectory->reserve(hp.num_iterations);
  }

  for (int t = 1; t <= hp.num_iterations; ++t) {
    auto [next, mean_reward] = step_system(result.final_system, target, hp, opts);
    result.final_system = std::move(next);
    result.history.mean_rewards.push_back(mean_reward);
    if (result.trajectory) result.trajectory->push_back(result.final_system.positions);
    if (opts.progress) opts.progress(t, hp.num_iterations, mean_reward);
  }
  return result;
}

}  // namespace rparvi
