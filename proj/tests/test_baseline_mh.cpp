#include <doctest.h>

#include <cmath>
#include <vector>

#include "rparvi/baseline_mh.hpp"
#include "rparvi/random_stream.hpp"
#include "scripted_noise.hpp"

using namespace rparvi;

namespace {

MhConfig gaussian_cfg() {
  MhConfig cfg;
  cfg.num_chains = 256;
  cfg.steps = 5000;
  cfg.proposal_std = 1.0;
  cfg.burn_in = 1000;
  cfg.seed = 7;
  cfg.bound = 5.0;
  return cfg;
}

}  // namespace

TEST_CASE("acceptance follows the density ratio") {
  // density doubles at the proposed point -> always accept
  TargetDensity rising(1, "custom", {}, [](std::span<const double> x) {
    return x[0] < 0.5 ? 1.0 : 2.0;
  });
  ScriptedNoise rng;
  rng.normals = {1.0};
  rng.uniforms = {0.999999};  // worst case draw still accepts
  auto next = mh_step(std::vector<double>{0.0}, rising, 1.0, rng);
  CHECK(next[0] == 1.0);

  // ratio 0.5: u = 0.49 accepts, u = 0.51 rejects
  TargetDensity halving(1, "custom", {}, [](std::span<const double> x) {
    return x[0] < 0.5 ? 1.0 : 0.5;
  });
  ScriptedNoise accept_rng;
  accept_rng.normals = {1.0};
  accept_rng.uniforms = {0.49};
  CHECK(mh_step(std::vector<double>{0.0}, halving, 1.0, accept_rng)[0] == 1.0);
  ScriptedNoise reject_rng;
  reject_rng.normals = {1.0};
  reject_rng.uniforms = {0.51};
  CHECK(mh_step(std::vector<double>{0.0}, halving, 1.0, reject_rng)[0] == 0.0);

  // zero-density proposal is never accepted from a positive state
  TargetDensity wall(1, "custom", {}, [](std::span<const double> x) {
    return x[0] < 0.5 ? 1.0 : 0.0;
  });
  ScriptedNoise wall_rng;
  wall_rng.normals = {1.0};
  wall_rng.uniforms = {0.0};
  CHECK(mh_step(std::vector<double>{0.0}, wall, 1.0, wall_rng)[0] == 0.0);
}

TEST_CASE("identical densities always accept") {
  TargetDensity flat(1, "custom", {}, [](std::span<const double>) {
    return 0.3;
  });
  ScriptedNoise rng;
  rng.normals = {0.7};
  rng.uniforms = {0.9999999};
  CHECK(mh_step(std::vector<double>{0.0}, flat, 1.0, rng)[0] == 0.7);
}

TEST_CASE("escape from a zero-density state is always accepted") {
  TargetDensity island(1, "custom", {}, [](std::span<const double> x) {
    return std::abs(x[0] - 2.0) < 0.5 ? 1.0 : 0.0;
  });
  ScriptedNoise rng;
  rng.normals = {2.0};
  rng.uniforms = {0.9999999};
  CHECK(mh_step(std::vector<double>{0.0}, island, 1.0, rng)[0] == 2.0);
}

TEST_CASE("mh_run recovers the moments of a standard gaussian") {
  const auto target = make_gaussian_target({0.0}, 1.0);
  const auto cfg = gaussian_cfg();
  const auto samples = mh_run(cfg, target);
  REQUIRE(samples.final_states.size() == 256);

  double mean = 0.0;
  for (double x : samples.final_states) mean += x;
  mean /= 256.0;
  double var = 0.0;
  for (double x : samples.final_states) var += (x - mean) * (x - mean);
  var /= 255.0;

  CHECK(std::abs(mean) < 0.2);                 // 3 sigma CLT bound
  CHECK(std::sqrt(var) > 0.85);
  CHECK(std::sqrt(var) < 1.15);
}

TEST_CASE("mh_run is deterministic and worker-invariant") {
  const auto target = make_gaussian_target({0.0, 0.0}, 1.0);
  MhConfig cfg;
  cfg.num_chains = 16;
  cfg.steps = 200;
  cfg.proposal_std = 0.8;
  cfg.burn_in = 50;
  cfg.seed = 11;
  cfg.bound = 3.0;
  cfg.thin = 10;

  const auto a = mh_run(cfg, target, 1);
  const auto b = mh_run(cfg, target, 1);
  const auto c = mh_run(cfg, target, 4);
  CHECK(a.final_states == b.final_states);
  CHECK(a.final_states == c.final_states);
  CHECK(a.thinned == b.thinned);
  CHECK(a.thinned == c.thinned);
  // 150 post-burn-in steps, every 10th kept
  CHECK(a.thinned.size() == 16u * 15u * 2u);
}

TEST_CASE("config invariants are enforced") {
  MhConfig cfg = gaussian_cfg();
  cfg.burn_in = cfg.steps;
  CHECK_THROWS_AS(check_mh_config(cfg), std::invalid_argument);
  cfg = gaussian_cfg();
  cfg.num_chains = 0;
  CHECK_THROWS_AS(check_mh_config(cfg), std::invalid_argument);
  cfg = gaussian_cfg();
  cfg.proposal_std = 0.0;
  CHECK_THROWS_AS(check_mh_config(cfg), std::invalid_argument);
}

TEST_CASE("long-run cell frequencies match the normalized density") {
  // Three unit-width cells centered at -1, 0, 1 with weights 1, 2, 3. A wide
  // proposal hops between cells, so the visit frequencies must converge to
  // the brute-force normalization 1/6, 2/6, 3/6.
  TargetDensity cells(1, "custom", {}, [](std::span<const double> x) {
    const double v = x[0];
    if (v >= -1.5 && v < -0.5) return 1.0;
    if (v >= -0.5 && v < 0.5) return 2.0;
    if (v >= 0.5 && v < 1.5) return 3.0;
    return 0.0;
  });

  rparvi::RandomStream rng(123, 0, 0);
  std::vector<double> state{0.0};
  const int burn = 1000;
  const int steps = 200000;
  double counts[3] = {0.0, 0.0, 0.0};
  int kept = 0;
  for (int s = 0; s < burn + steps; ++s) {
    state = mh_step(state, cells, 2.0, rng);
    if (s >= burn) {
      if (state[0] < -0.5)
        counts[0] += 1.0;
      else if (state[0] < 0.5)
        counts[1] += 1.0;
      else
        counts[2] += 1.0;
      ++kept;
    }
  }
  const double expected[3] = {1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0};
  for (int k = 0; k < 3; ++k) {
    const double freq = counts[k] / kept;
    // 3 standard errors with a conservative effective sample size of n/10
    const double se = std::sqrt(expected[k] * (1.0 - expected[k]) / (kept / 10.0));
    CHECK(std::abs(freq - expected[k]) < 3.0 * se);
  }
}
