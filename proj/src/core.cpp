#include "rparvi/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rparvi/random_stream.hpp"

namespace rparvi {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

long long get_integer(const json& value, const std::string& key) {
  if (!value.is_number_integer()) fail(key + ": expected an integer");
  return value.get<long long>();
}

double get_number(const json& value, const std::string& key) {
  if (!value.is_number()) fail(key + ": expected a number");
  return value.get<double>();
}

}  // namespace

void check_hyperparameters(const Hyperparameters& hp) {
  if (hp.num_particles <= 0) fail("num_particles must be positive");
  if (hp.dim <= 0) fail("dim must be positive");
  if (hp.num_iterations < 0) fail("num_iterations must be nonnegative");
  if (!(hp.alpha >= 0.0 && hp.alpha <= 1.0)) fail("alpha must be in [0, 1]");
  if (!(std::abs(hp.alpha + hp.beta - 1.0) <= 1e-12))
    fail("beta must equal 1 - alpha");
  if (!(hp.eta > 0.0) || !std::isfinite(hp.eta)) fail("eta must be positive");
  if (!(hp.epsilon >= 0.0) || !std::isfinite(hp.epsilon))
    fail("epsilon must be nonnegative");
  if (!(hp.gamma >= 0.0 && hp.gamma < 1.0)) fail("gamma must be in [0, 1)");
  if (!(hp.perturb_std > 0.0) || !std::isfinite(hp.perturb_std))
    fail("perturb_std must be positive");
  if (!(hp.bound > 0.0) || !std::isfinite(hp.bound))
    fail("bound must be positive");
}

Hyperparameters validate_hyperparameters(const json& raw) {
  if (!raw.is_object()) fail("hyperparameters: expected an object");

  Hyperparameters hp;
  bool have_m = false, have_d = false, have_t = false, have_l = false;
  bool alpha_set = false;

  auto assign_once = [&](bool& flag, const std::string& key) {
    if (flag) fail("duplicate key: " + key);
    flag = true;
  };

  bool have_eta = false, have_eps = false, have_gamma = false,
       have_std = false, have_seed = false, have_traj = false;

  for (const auto& [key, value] : raw.items()) {
    if (key == "M" || key == "num_particles") {
      assign_once(have_m, "num_particles");
      const long long m = get_integer(value, "num_particles");
      if (m <= 0) fail("num_particles must be positive");
      if (m > std::numeric_limits<int>::max()) fail("num_particles too large");
      hp.num_particles = static_cast<int>(m);
    } else if (key == "d" || key == "dim") {
      assign_once(have_d, "dim");
      const long long d = get_integer(value, "dim");
      if (d <= 0) fail("dim must be positive");
      if (d > std::numeric_limits<int>::max()) fail("dim too large");
      hp.dim = static_cast<int>(d);
    } else if (key == "T" || key == "num_iterations") {
      assign_once(have_t, "num_iterations");
      const long long t = get_integer(value, "num_iterations");
      if (t < 0) fail("num_iterations must be nonnegative");
      if (t > std::numeric_limits<int>::max()) fail("num_iterations too large");
      hp.num_iterations = static_cast<int>(t);
    } else if (key == "L" || key == "bound") {
      assign_once(have_l, "bound");
      hp.bound = get_number(value, "bound");
    } else if (key == "alpha") {
      assign_once(alpha_set, "alpha");
      hp.alpha = get_number(value, "alpha");
    } else if (key == "beta") {
      fail("beta is derived as 1 - alpha and cannot be set directly");
    } else if (key == "eta") {
      assign_once(have_eta, "eta");
      hp.eta = get_number(value, "eta");
    } else if (key == "epsilon") {
      assign_once(have_eps, "epsilon");
      hp.epsilon = get_number(value, "epsilon");
    } else if (key == "gamma") {
      assign_once(have_gamma, "gamma");
      hp.gamma = get_number(value, "gamma");
    } else if (key == "perturb_std") {
      assign_once(have_std, "perturb_std");
      hp.perturb_std = get_number(value, "perturb_std");
    } else if (key == "seed") {
      assign_once(have_seed, "seed");
      if (value.is_number_unsigned()) {
        hp.seed = value.get<std::uint64_t>();
      } else if (value.is_number_integer()) {
        const long long s = value.get<long long>();
        if (s < 0) fail("seed must be nonnegative");
        hp.seed = static_cast<std::uint64_t>(s);
      } else {
        fail("seed: expected an integer");
      }
    } else if (key == "record_trajectory") {
      assign_once(have_traj, "record_trajectory");
      if (!value.is_boolean()) fail("record_trajectory: expected a boolean");
      hp.record_trajectory = value.get<bool>();
    } else {
      fail("unknown key: " + key);
    }
  }

  if (!have_m) fail("missing required key: num_particles (M)");
  if (!have_d) fail("missing required key: dim (d)");
  if (!have_t) fail("missing required key: num_iterations (T)");
  if (!have_l) fail("missing required key: bound (L)");

  hp.beta = 1.0 - hp.alpha;
  check_hyperparameters(hp);
  return hp;
}

ParticleSystem init_particles(const Hyperparameters& hp) {
  check_hyperparameters(hp);
  ParticleSystem sys;
  sys.num_particles = hp.num_particles;
  sys.dim = hp.dim;
  sys.iteration = 0;
  sys.positions.resize(static_cast<std::size_t>(hp.num_particles) * hp.dim);
  sys.velocities.assign(static_cast<std::size_t>(hp.num_particles) * hp.dim,
                        0.0);
  for (int p = 0; p < hp.num_particles; ++p) {
    RandomStream rng(hp.seed, static_cast<std::uint64_t>(p), 0);
    auto x = sys.position(p);
    for (int k = 0; k < hp.dim; ++k) x[k] = rng.uniform(-hp.bound, hp.bound);
  }
  return sys;
}

void clip_position_in_place(std::span<double> x, double bound) {
  for (double& v : x) v = std::clamp(v, -bound, bound);
}

std::vector<double> clip_position(std::span<const double> x, double bound) {
  std::vector<double> out(x.begin(), x.end());
  clip_position_in_place(out, bound);
  return out;
}

}  // namespace rparvi
