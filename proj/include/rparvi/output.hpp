#pragma once

#include <string>

#include "rparvi/baseline_mh.hpp"
#include "rparvi/config.hpp"
#include "rparvi/engine.hpp"

namespace rparvi {

/// Formats a double with 17 significant digits so parsing the text recovers
/// the value bit for bit.
std::string format_double(double value);

/// Writes particles.csv, reward_history.csv, trajectory.csv (when recorded),
/// mh_samples.csv (when a baseline ran) and summary.json into the configured
/// output directory. Throws std::runtime_error on I/O failure.
void write_outputs(const RunResult& result, const RunConfig& cfg,
                   double wall_time_seconds = 0.0,
                   const MhSamples* baseline = nullptr);

/// Executes the configured run (plus the MH baseline when requested), fills
/// the metrics report and writes all output files. Returns the process exit
/// status: 0 on success, 1 on validation or I/O errors, 2 on a numeric abort.
/// Progress and error messages go to stderr.
int run_command(RunConfig& cfg);

}  // namespace rparvi
