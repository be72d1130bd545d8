#include "rparvi/config.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rparvi {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* section) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(std::string(section) + ": unknown key: " + key);
  }
}

double require_number(const json& obj, const char* key, const char* section) {
  if (!obj[key].is_number())
    fail(std::string(section) + "." + key + ": expected a number");
  return obj[key].get<double>();
}

long long require_integer(const json& obj, const char* key, const char* section) {
  if (!obj[key].is_number_integer())
    fail(std::string(section) + "." + key + ": expected an integer");
  return obj[key].get<long long>();
}

bool require_boolean(const json& obj, const char* key, const char* section) {
  if (!obj[key].is_boolean())
    fail(std::string(section) + "." + key + ": expected a boolean");
  return obj[key].get<bool>();
}

MhConfig parse_baseline(const json& section, const Hyperparameters& hp) {
  if (!section.is_object()) fail("baseline: expected an object");
  reject_unknown(section,
                 {"num_chains", "steps", "proposal_std", "burn_in", "seed",
                  "bound", "thin"},
                 "baseline");
  MhConfig cfg;
  cfg.seed = hp.seed;
  cfg.bound = hp.bound;
  if (section.contains("num_chains"))
    cfg.num_chains = static_cast<int>(require_integer(section, "num_chains", "baseline"));
  else
    fail("baseline: missing required key: num_chains");
  if (section.contains("steps"))
    cfg.steps = static_cast<int>(require_integer(section, "steps", "baseline"));
  else
    fail("baseline: missing required key: steps");
  if (section.contains("proposal_std"))
    cfg.proposal_std = require_number(section, "proposal_std", "baseline");
  if (section.contains("burn_in"))
    cfg.burn_in = static_cast<int>(require_integer(section, "burn_in", "baseline"));
  if (section.contains("thin"))
    cfg.thin = static_cast<int>(require_integer(section, "thin", "baseline"));
  if (section.contains("bound"))
    cfg.bound = require_number(section, "bound", "baseline");
  if (section.contains("seed")) {
    const auto& s = section["seed"];
    if (s.is_number_unsigned()) {
      cfg.seed = s.get<std::uint64_t>();
    } else if (s.is_number_integer() && s.get<long long>() >= 0) {
      cfg.seed = static_cast<std::uint64_t>(s.get<long long>());
    } else {
      fail("baseline.seed: expected a nonnegative integer");
    }
  }
  check_mh_config(cfg);
  return cfg;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("config: expected an object");
  reject_unknown(doc, {"hyperparameters", "target", "baseline", "output"},
                 "config");
  if (!doc.contains("hyperparameters"))
    fail("config: missing required section: hyperparameters");
  if (!doc.contains("target")) fail("config: missing required section: target");

  Hyperparameters hp = validate_hyperparameters(doc["hyperparameters"]);
  TargetDensity target = target_from_json(doc["target"], hp.dim);

  RunConfig cfg{.hp = hp, .target = std::move(target)};

  if (doc.contains("baseline"))
    cfg.baseline = parse_baseline(doc["baseline"], cfg.hp);

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) fail("output: expected an object");
    reject_unknown(
        out, {"directory", "trajectory", "metrics", "mode_centers", "mode_radius"},
        "output");
    if (out.contains("directory")) {
      if (!out["directory"].is_string())
        fail("output.directory: expected a string");
      cfg.output_directory = out["directory"].get<std::string>();
    }
    if (out.contains("trajectory"))
      cfg.hp.record_trajectory = require_boolean(out, "trajectory", "output");
    if (out.contains("metrics"))
      cfg.write_metrics = require_boolean(out, "metrics", "output");
    if (out.contains("mode_centers")) {
      if (!out["mode_centers"].is_array())
        fail("output.mode_centers: expected an array of points");
      std::vector<std::vector<double>> centers;
      for (const auto& point : out["mode_centers"]) {
        if (!point.is_array())
          fail("output.mode_centers: expected an array of points");
        std::vector<double> c;
        for (const auto& v : point) {
          if (!v.is_number())
            fail("output.mode_centers: expected numeric coordinates");
          c.push_back(v.get<double>());
        }
        if (c.size() != static_cast<std::size_t>(cfg.hp.dim))
          fail("output.mode_centers: center dimension does not match dim");
        centers.push_back(std::move(c));
      }
      if (centers.empty()) fail("output.mode_centers: must be nonempty");
      cfg.mode_centers = std::move(centers);
    }
    if (out.contains("mode_radius")) {
      cfg.mode_radius = require_number(out, "mode_radius", "output");
      if (!(cfg.mode_radius > 0.0))
        fail("output.mode_radius: must be positive");
    }
    if (cfg.mode_centers && !(cfg.mode_radius > 0.0))
      fail("output.mode_radius is required with mode_centers");
  }

  return cfg;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config parse error: ") + e.what());
  }
  return parse_config(doc);
}

json RunConfig::to_json() const {
  json hp_json{{"num_particles", hp.num_particles},
               {"dim", hp.dim},
               {"num_iterations", hp.num_iterations},
               {"alpha", hp.alpha},
               {"eta", hp.eta},
               {"epsilon", hp.epsilon},
               {"gamma", hp.gamma},
               {"perturb_std", hp.perturb_std},
               {"bound", hp.bound},
               {"seed", hp.seed},
               {"record_trajectory", hp.record_trajectory}};

  json doc{{"hyperparameters", std::move(hp_json)},
           {"target", target.descriptor()}};

  if (baseline) {
    doc["baseline"] = json{{"num_chains", baseline->num_chains},
                           {"steps", baseline->steps},
                           {"proposal_std", baseline->proposal_std},
                           {"burn_in", baseline->burn_in},
                           {"seed", baseline->seed},
                           {"bound", baseline->bound},
                           {"thin", baseline->thin}};
  }

  json out{{"directory", output_directory}, {"metrics", write_metrics}};
  if (mode_centers) {
    out["mode_centers"] = *mode_centers;
    out["mode_radius"] = mode_radius;
  }
  doc["output"] = std::move(out);
  return doc;
}

}  // namespace rparvi
