#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rparvi/baseline_mh.hpp"
#include "rparvi/core.hpp"
#include "rparvi/target.hpp"

namespace rparvi {

// A fully validated run description. The file grammar has four sections:
// hyperparameters (required), target (required), baseline and output
// (optional). Unknown keys anywhere are rejected.
struct RunConfig {
  Hyperparameters hp;
  TargetDensity target;
  std::optional<MhConfig> baseline;

  // output section
  std::string output_directory = ".";
  bool write_metrics = true;
  std::optional<std::vector<std::vector<double>>> mode_centers;
  double mode_radius = 0.0;

  // Runtime knobs set by command-line flags, not part of the file grammar.
  int workers = 0;  // 0 = all hardware threads
  bool quiet = false;
  bool cheap_history = false;

  /// Config-file sections only; parse_config(to_json()) reproduces the config.
  nlohmann::json to_json() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config(const std::string& text);

}  // namespace rparvi
