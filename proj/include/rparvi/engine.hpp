#pragma once

#include <concepts>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rparvi/core.hpp"
#include "rparvi/metrics.hpp"
#include "rparvi/reward.hpp"
#include "rparvi/target.hpp"

namespace rparvi {

// Raised when a target evaluation produces an invalid density mid-run.
class NumericError : public std::runtime_error {
 public:
  NumericError(int particle, int iteration, const std::string& detail)
      : std::runtime_error("particle " + std::to_string(particle) +
                           ", iteration " + std::to_string(iteration) + ": " +
                           detail),
        particle_(particle),
        iteration_(iteration) {}

  int particle() const noexcept { return particle_; }
  int iteration() const noexcept { return iteration_; }

 private:
  int particle_;
  int iteration_;
};

struct RunOptions {
  int num_workers = 1;  // 0 = all hardware threads
  // Reuse the test reward R(x') for the history instead of re-evaluating the
  // target at the post-move position (2 instead of 3 evaluations per particle
  // per iteration).
  bool cheap_history = false;
  // Called after every completed iteration with (t, T, mean reward).
  std::function<void(int, int, double)> progress;
};

struct StepOutcome {
  bool accepted = false;
  std::vector<double> new_position;
  std::vector<double> new_velocity;
  double reward_at_new_position = 0.0;
};

struct RunResult {
  ParticleSystem final_system;
  RewardHistory history;
  // One M x d position snapshot per iteration, present iff record_trajectory.
  std::optional<std::vector<std::vector<double>>> trajectory;
  std::optional<MetricsReport> metrics_summary;
};

template <class R>
concept NoiseSource = requires(R r, double s) {
  { r.normal(s) } -> std::convertible_to<double>;
};

/// One particle update: probe a Gaussian test displacement, grow the velocity
/// along it on strict reward improvement (otherwise damp), then move with
/// unconditional exploration noise and clip to the box. Draw order per call is
/// fixed: d perturbation variates, then d exploration variates.
template <NoiseSource R>
StepOutcome step_particle(std::span<const double> x, std::span<const double> v,
                          const TargetDensity& target,
                          const Hyperparameters& hp, R& rng,
                          bool history_at_new_position = true) {
  const int d = static_cast<int>(x.size());
  const RewardWeights w{hp.alpha, hp.beta};

  std::vector<double> delta(d);
  for (int k = 0; k < d; ++k) delta[k] = rng.normal(hp.perturb_std);

  std::vector<double> test(d);
  for (int k = 0; k < d; ++k) test[k] = x[k] + delta[k];

  const double reward_current = reward(target(x), w);
  const double reward_test = reward(target(test), w);

  StepOutcome out;
  out.accepted = reward_test > reward_current;
  out.new_velocity.resize(d);
  if (out.accepted) {
    for (int k = 0; k < d; ++k) out.new_velocity[k] = v[k] + hp.eta * delta[k];
  } else {
    for (int k = 0; k < d; ++k) out.new_velocity[k] = hp.gamma * v[k];
  }

  out.new_position.resize(d);
  for (int k = 0; k < d; ++k) {
    out.new_position[k] = x[k] + out.new_velocity[k] + rng.normal(hp.epsilon);
  }
  clip_position_in_place(out.new_position, hp.bound);

  out.reward_at_new_position =
      history_at_new_position ? reward(target(out.new_position), w) : reward_test;
  return out;
}

/// Advances all particles by one iteration using their (seed, particle,
/// iteration)-keyed streams and returns the updated system together with the
/// mean reward at the new positions. Bit-identical for any worker count.
std::pair<ParticleSystem, double> step_system(const ParticleSystem& sys,
                                              const TargetDensity& target,
                                              const Hyperparameters& hp,
                                              const RunOptions& opts = {});

/// Full run: initialize, iterate T times, collect the reward history and the
/// optional trajectory.
RunResult run(const Hyperparameters& hp, const TargetDensity& target,
              const RunOptions& opts = {});

}  // namespace rparvi
