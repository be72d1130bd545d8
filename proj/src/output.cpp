#include "rparvi/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <system_error>

#include "rparvi/metrics.hpp"

namespace rparvi {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_particles_csv(const fs::path& path, const ParticleSystem& sys) {
  auto out = open_for_write(path);
  out << "particle_id";
  for (int k = 0; k < sys.dim; ++k) out << ",dim_" << k;
  out << "\n";
  for (int p = 0; p < sys.num_particles; ++p) {
    out << p;
    for (double v : sys.position(p)) out << ',' << format_double(v);
    out << "\n";
  }
  finish(out, path);
}

void write_history_csv(const fs::path& path, const RewardHistory& history) {
  auto out = open_for_write(path);
  out << "iteration,mean_reward\n";
  for (std::size_t t = 0; t < history.mean_rewards.size(); ++t) {
    out << (t + 1) << ',' << format_double(history.mean_rewards[t]) << "\n";
  }
  finish(out, path);
}

void write_trajectory_csv(const fs::path& path,
                          const std::vector<std::vector<double>>& snapshots,
                          int num_particles, int dim) {
  auto out = open_for_write(path);
  out << "iteration,particle_id";
  for (int k = 0; k < dim; ++k) out << ",dim_" << k;
  out << "\n";
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    const auto& snap = snapshots[t];
    for (int p = 0; p < num_particles; ++p) {
      out << (t + 1) << ',' << p;
      for (int k = 0; k < dim; ++k)
        out << ',' << format_double(snap[static_cast<std::size_t>(p) * dim + k]);
      out << "\n";
    }
  }
  finish(out, path);
}

void write_samples_csv(const fs::path& path, const MhSamples& samples) {
  auto out = open_for_write(path);
  const int n = samples.dim > 0
                    ? static_cast<int>(samples.final_states.size()) / samples.dim
                    : 0;
  out << "chain_id";
  for (int k = 0; k < samples.dim; ++k) out << ",dim_" << k;
  out << "\n";
  for (int c = 0; c < n; ++c) {
    out << c;
    for (int k = 0; k < samples.dim; ++k) {
      out << ','
          << format_double(
                 samples.final_states[static_cast<std::size_t>(c) * samples.dim + k]);
    }
    out << "\n";
  }
  finish(out, path);
}

nlohmann::json baseline_summary(const MhSamples& samples) {
  nlohmann::json j;
  const int d = samples.dim;
  const int n = d > 0 ? static_cast<int>(samples.final_states.size()) / d : 0;
  j["num_samples"] = n;
  if (n >= 2) {
    auto [mean, cov] = sample_moments(samples.final_states, n, d);
    j["mean"] = mean;
    std::vector<double> stds(d);
    for (int k = 0; k < d; ++k)
      stds[k] = std::sqrt(cov[static_cast<std::size_t>(k) * d + k]);
    j["std"] = stds;
  }
  return j;
}

MetricsReport compute_metrics(const RunResult& result, const RunConfig& cfg,
                              const MhSamples* baseline) {
  const ParticleSystem& sys = result.final_system;
  MetricsReport report;
  auto [mean, cov] = sample_moments(sys.positions, sys.num_particles, sys.dim);
  report.mean = std::move(mean);
  report.covariance = std::move(cov);

  std::vector<double> ks(sys.dim, 0.0);
  bool all_axes = true;
  for (int axis = 0; axis < sys.dim && all_axes; ++axis) {
    auto cdf = marginal_cdf(cfg.target, axis);
    if (!cdf) {
      all_axes = false;
      break;
    }
    std::vector<double> column(sys.num_particles);
    for (int p = 0; p < sys.num_particles; ++p) column[p] = sys.position(p)[axis];
    ks[axis] = ks_statistic_1d(std::move(column), *cdf);
  }
  if (all_axes) report.ks_per_dim = std::move(ks);

  if (baseline && baseline->dim == sys.dim &&
      static_cast<int>(baseline->final_states.size()) / baseline->dim >= 2) {
    report.mmd_squared = mmd_squared(
        sys.positions, sys.num_particles, baseline->final_states,
        static_cast<int>(baseline->final_states.size()) / baseline->dim, sys.dim);
  }

  if (cfg.mode_centers) {
    report.mode_occupancy =
        mode_occupancy(sys.positions, sys.num_particles, sys.dim,
                       *cfg.mode_centers, cfg.mode_radius);
  }
  return report;
}

}  // namespace

void write_outputs(const RunResult& result, const RunConfig& cfg,
                   double wall_time_seconds, const MhSamples* baseline) {
  const fs::path dir(cfg.output_directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());

  write_particles_csv(dir / "particles.csv", result.final_system);
  write_history_csv(dir / "reward_history.csv", result.history);
  if (result.trajectory) {
    write_trajectory_csv(dir / "trajectory.csv", *result.trajectory,
                         result.final_system.num_particles,
                         result.final_system.dim);
  }
  if (baseline) write_samples_csv(dir / "mh_samples.csv", *baseline);

  nlohmann::json summary;
  summary["config"] = cfg.to_json();
  summary["workers"] = cfg.workers;
  summary["wall_time_seconds"] = wall_time_seconds;
  summary["iterations_completed"] =
      static_cast<int>(result.history.mean_rewards.size());
  if (!result.history.mean_rewards.empty())
    summary["final_mean_reward"] = result.history.mean_rewards.back();
  if (result.metrics_summary)
    summary["metrics"] = result.metrics_summary->to_json();
  if (baseline) summary["baseline"] = baseline_summary(*baseline);

  auto out = open_for_write(dir / "summary.json");
  out << summary.dump(2) << "\n";
  finish(out, dir / "summary.json");
}

int run_command(RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  try {
    RunOptions opts;
    opts.num_workers = cfg.workers;
    opts.cheap_history = cfg.cheap_history;
    if (!cfg.quiet && cfg.hp.num_iterations > 0) {
      const int total = cfg.hp.num_iterations;
      opts.progress = [total, next_decile = 1](int t, int, double mean) mutable {
        while (next_decile <= 10 &&
               static_cast<long long>(t) * 10 >= static_cast<long long>(total) * next_decile) {
          std::cerr << "[" << next_decile * 10 << "%] iteration " << t << "/"
                    << total << " mean reward " << mean << "\n";
          ++next_decile;
        }
      };
    }

    const auto t0 = clock::now();
    RunResult result = run(cfg.hp, cfg.target, opts);

    std::optional<MhSamples> baseline;
    if (cfg.baseline) {
      baseline = mh_run(*cfg.baseline, cfg.target, cfg.workers);
      if (!cfg.quiet)
        std::cerr << "baseline: " << cfg.baseline->num_chains << " MH chains, "
                  << cfg.baseline->steps << " steps\n";
    }
    const double wall =
        std::chrono::duration<double>(clock::now() - t0).count();

    if (cfg.write_metrics && cfg.hp.num_particles >= 2) {
      result.metrics_summary =
          compute_metrics(result, cfg, baseline ? &*baseline : nullptr);
    }

    write_outputs(result, cfg, wall, baseline ? &*baseline : nullptr);
    if (!cfg.quiet)
      std::cerr << "wrote outputs to " << cfg.output_directory << "\n";
    return 0;
  } catch (const NumericError& e) {
    std::cerr << "numeric abort: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rparvi
