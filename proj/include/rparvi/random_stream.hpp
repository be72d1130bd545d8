#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rparvi {

// Counter-based random stream keyed by (root_seed, particle_index, iteration).
// Every variate is a pure function of the key and the draw counter, so particle
// updates can be scheduled on any number of threads and still reproduce the
// same run bit for bit. The generator is the splitmix64 sequence seeded with a
// mixed key.
class RandomStream {
 public:
  RandomStream(std::uint64_t root_seed, std::uint64_t particle_index,
               std::uint64_t iteration)
      : base_(derive_key(root_seed, particle_index, iteration)) {}

  // splitmix64 finalizer
  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(base_ + counter_ * 0x9E3779B97F4A7C15ull);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // N(0, stddev^2) via the cosine branch of Box-Muller. Always consumes
  // exactly two draws, even for stddev = 0, so the counter-to-variate mapping
  // does not depend on the hyperparameters.
  double normal(double stddev) {
    const double u1 =
        static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 =
        static_cast<double>(next_u64() >> 11) * 0x1.0p-53;  // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    return stddev * (r * std::cos(2.0 * std::numbers::pi * u2));
  }

  std::uint64_t draws() const { return counter_; }

 private:
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t particle,
                                  std::uint64_t iteration) {
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ (particle + 0xBF58476D1CE4E5B9ull));
    h = mix64(h ^ (iteration + 0x94D049BB133111EBull));
    return h;
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace rparvi
