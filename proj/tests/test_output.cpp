#include <doctest.h>

#include <unistd.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rparvi/config.hpp"
#include "rparvi/output.hpp"

using namespace rparvi;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() /
                   ("rparvi_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_config(const std::string& dir, int m = 2, int t = 5) {
  return parse_config(std::string(R"({
    "hyperparameters": {"M": )") + std::to_string(m) +
                      R"(, "d": 1, "T": )" + std::to_string(t) +
                      R"(, "L": 5, "seed": 21},
    "target": {"kind": "gaussian"},
    "output": {"directory": ")" + dir + R"("}
  })");
}

}  // namespace

TEST_CASE("format_double round-trips through parsing") {
  const double values[] = {0.0,
                           -0.0,
                           1.0 / 3.0,
                           1e-300,
                           -12345.678901234567,
                           std::numeric_limits<double>::denorm_min()};
  for (double v : values) {
    const std::string text = format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), back);
    REQUIRE(res.ec == std::errc());
    CHECK(back == v);
  }
}

TEST_CASE("run_command writes the documented file set") {
  const auto dir = fresh_dir("files");
  auto cfg = small_config(dir.string());
  cfg.quiet = true;
  CHECK(run_command(cfg) == 0);

  const auto particles = read_lines(dir / "particles.csv");
  REQUIRE(particles.size() == 3);  // header + 2 rows
  CHECK(particles[0] == "particle_id,dim_0");

  const auto history = read_lines(dir / "reward_history.csv");
  REQUIRE(history.size() == 6);  // header + 5 rows
  CHECK(history[0] == "iteration,mean_reward");

  CHECK(fs::exists(dir / "summary.json"));
  CHECK_FALSE(fs::exists(dir / "trajectory.csv"));
  fs::remove_all(dir);
}

TEST_CASE("particles round-trip bit-identically through the csv") {
  const auto dir = fresh_dir("roundtrip");
  auto cfg = small_config(dir.string(), 10, 20);
  cfg.quiet = true;

  RunOptions opts;
  const RunResult result = run(cfg.hp, cfg.target, opts);
  write_outputs(result, cfg);

  const auto lines = read_lines(dir / "particles.csv");
  REQUIRE(lines.size() == 11);
  for (int p = 0; p < 10; ++p) {
    const std::string& line = lines[p + 1];
    const auto comma = line.find(',');
    const std::string coord = line.substr(comma + 1);
    double parsed = 0.0;
    const auto res =
        std::from_chars(coord.data(), coord.data() + coord.size(), parsed);
    REQUIRE(res.ec == std::errc());
    CHECK(parsed == result.final_system.position(p)[0]);
  }
  fs::remove_all(dir);
}

TEST_CASE("outputs are byte-identical across repeated runs") {
  const auto dir_a = fresh_dir("repeat_a");
  const auto dir_b = fresh_dir("repeat_b");
  auto cfg_a = small_config(dir_a.string(), 6, 10);
  auto cfg_b = small_config(dir_b.string(), 6, 10);
  cfg_a.quiet = cfg_b.quiet = true;
  REQUIRE(run_command(cfg_a) == 0);
  REQUIRE(run_command(cfg_b) == 0);
  CHECK(read_all(dir_a / "particles.csv") == read_all(dir_b / "particles.csv"));
  CHECK(read_all(dir_a / "reward_history.csv") ==
        read_all(dir_b / "reward_history.csv"));
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("trajectory rows cover every iteration and particle") {
  const auto dir = fresh_dir("traj");
  auto cfg = parse_config(std::string(R"({
    "hyperparameters": {"M": 3, "d": 2, "T": 4, "L": 2, "seed": 5},
    "target": {"kind": "banana"},
    "output": {"directory": ")") + dir.string() + R"(", "trajectory": true}
  })");
  cfg.quiet = true;
  REQUIRE(run_command(cfg) == 0);
  const auto lines = read_lines(dir / "trajectory.csv");
  CHECK(lines.size() == 1 + 4 * 3);
  CHECK(lines[0] == "iteration,particle_id,dim_0,dim_1");
  fs::remove_all(dir);
}

TEST_CASE("exit codes distinguish validation errors from numeric aborts") {
  {
    // dimension mismatch assembled programmatically
    auto cfg = small_config(fresh_dir("dim").string());
    cfg.quiet = true;
    RunConfig broken{.hp = cfg.hp, .target = make_gaussian_target({0.0, 0.0}, 1.0)};
    broken.quiet = true;
    broken.output_directory = cfg.output_directory;
    CHECK(run_command(broken) == 1);
  }
  {
    const auto dir = fresh_dir("nan");
    auto cfg = small_config(dir.string());
    RunConfig nan_cfg{
        .hp = cfg.hp,
        .target = TargetDensity(1, "custom", {}, [](std::span<const double>) {
          return std::numeric_limits<double>::quiet_NaN();
        })};
    nan_cfg.quiet = true;
    nan_cfg.output_directory = dir.string();
    CHECK(run_command(nan_cfg) == 2);
    fs::remove_all(dir);
  }
}

TEST_CASE("summary reports metrics and the baseline when configured") {
  const auto dir = fresh_dir("summary");
  auto cfg = parse_config(std::string(R"({
    "hyperparameters": {"M": 50, "d": 1, "T": 50, "L": 5, "seed": 33},
    "target": {"kind": "gaussian"},
    "baseline": {"num_chains": 16, "steps": 200, "burn_in": 20},
    "output": {"directory": ")") + dir.string() + R"(",
               "mode_centers": [[0.0]], "mode_radius": 1.0}
  })");
  cfg.quiet = true;
  REQUIRE(run_command(cfg) == 0);

  const auto summary = nlohmann::json::parse(read_all(dir / "summary.json"));
  REQUIRE(summary.contains("metrics"));
  CHECK(summary["metrics"].contains("mean"));
  CHECK(summary["metrics"].contains("covariance"));
  CHECK(summary["metrics"].contains("ks_per_dim"));
  CHECK(summary["metrics"].contains("mmd_squared"));
  CHECK(summary["metrics"].contains("mode_occupancy"));
  CHECK(summary["baseline"]["num_samples"] == 16);
  CHECK(summary["config"]["hyperparameters"]["num_particles"] == 50);
  CHECK(fs::exists(dir / "mh_samples.csv"));
  fs::remove_all(dir);
}
