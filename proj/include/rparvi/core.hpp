#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace rparvi {

// Run constants. beta is not a free knob: it is always derived as 1 - alpha.
struct Hyperparameters {
  int num_particles = 0;     // M
  int dim = 0;               // d
  int num_iterations = 0;    // T
  double alpha = 0.6;        // density-term weight
  double beta = 0.4;         // diversity-term weight, 1 - alpha
  double eta = 0.1;          // velocity learning rate
  double epsilon = 0.1;      // exploration noise scale
  double gamma = 0.9;        // velocity damping factor
  double perturb_std = 0.1;  // test displacement scale
  double bound = 0.0;        // L, half width of the clipping box
  std::uint64_t seed = 0;
  bool record_trajectory = false;
};

/// Range checks; throws std::invalid_argument naming the offending field.
void check_hyperparameters(const Hyperparameters& hp);

/// Builds a validated record from a raw key/value object, applying defaults
/// for everything except M, d, T and L. Accepts the short names M, d, T, L as
/// aliases for num_particles, dim, num_iterations, bound. beta cannot be set
/// directly. Unknown keys are rejected.
Hyperparameters validate_hyperparameters(const nlohmann::json& raw);

// Positions and velocities of M particles in d dimensions at one iteration.
struct ParticleSystem {
  int num_particles = 0;
  int dim = 0;
  int iteration = 0;
  std::vector<double> positions;   // row-major M x d
  std::vector<double> velocities;  // row-major M x d

  std::span<double> position(int p) {
    return {positions.data() + static_cast<std::size_t>(p) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<const double> position(int p) const {
    return {positions.data() + static_cast<std::size_t>(p) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<double> velocity(int p) {
    return {velocities.data() + static_cast<std::size_t>(p) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<const double> velocity(int p) const {
    return {velocities.data() + static_cast<std::size_t>(p) * dim,
            static_cast<std::size_t>(dim)};
  }
};

// Per-iteration mean reward sequence, the convergence diagnostic.
struct RewardHistory {
  std::vector<double> mean_rewards;
};

/// Positions drawn i.i.d. uniform on [-L, L]^d from per-particle streams
/// (iteration key 0); velocities exactly zero.
ParticleSystem init_particles(const Hyperparameters& hp);

/// Componentwise clamp to [-bound, bound]. Idempotent.
void clip_position_in_place(std::span<double> x, double bound);
std::vector<double> clip_position(std::span<const double> x, double bound);

}  // namespace rparvi
