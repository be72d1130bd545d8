#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rparvi/config.hpp"
#include "rparvi/output.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rparvi - reward-guided gradient-free particle sampler"};

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  int workers = 0;
  bool quiet = false;
  bool cheap_history = false;

  app.add_option("--config", config_path, "Path to the JSON run config")
      ->required();
  app.add_option("--seed", seed, "Override the config seed (applies to the "
                                 "sampler and the MH baseline)");
  app.add_option("--output-dir", output_dir, "Override the output directory");
  app.add_option("--workers", workers, "Worker threads (0 = all hardware threads)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", quiet, "Suppress progress output");
  app.add_flag("--cheap-history", cheap_history,
               "Reuse the test reward for the history instead of a third "
               "density evaluation per particle");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();

  try {
    rparvi::RunConfig cfg = rparvi::parse_config(text.str());
    if (seed) {
      cfg.hp.seed = *seed;
      if (cfg.baseline) cfg.baseline->seed = *seed;
    }
    if (output_dir) cfg.output_directory = *output_dir;
    cfg.workers = workers;
    cfg.quiet = quiet;
    cfg.cheap_history = cheap_history;
    return rparvi::run_command(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
