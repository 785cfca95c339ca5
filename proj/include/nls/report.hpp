#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nls/instance.hpp"

namespace nls {

/// (makespan - optimum) / optimum as a fraction.
double optimality_gap(double makespan, double optimum);

/// Fraction rendered as a percentage with two decimals, e.g. "7.66%".
std::string format_percent(double fraction);

struct KnownBounds {
  Time lower = 0;
  Time upper = 0;  // best known makespan; the optimum when lower == upper

  bool optimal() const { return lower == upper; }
};

/// Reads "name jobs machines lower upper" lines; '#' starts a comment.
std::map<std::string, KnownBounds> load_known_bounds(const std::filesystem::path& path);

struct ReportConfig {
  std::string policy;
  std::string action_set;
  int steps = 0;
  std::uint64_t seed = 0;
  double rtg_factor = 1.0;
  int perturb_strength = 5;
  int context_length = 50;
};

struct InstanceResult {
  std::string instance_id;
  int num_jobs = 0;
  int num_machines = 0;
  Time lower_bound = 0;
  Time initial_makespan = 0;
  Time makespan = 0;  // best found
  std::optional<Time> optimum;
  double wall_seconds = 0.0;
  std::vector<Time> best_by_step;
  std::vector<double> seconds_by_step;
  std::vector<std::size_t> action_counts;
  std::optional<std::string> error;  // set when the episode aborted

  std::string size() const {
    return std::to_string(num_jobs) + "x" + std::to_string(num_machines);
  }
};

/// Means over the successfully solved instances of one size. gap follows the
/// benchmark-table convention: gap of the mean makespan against the mean
/// optimum. mean_instance_gap averages the per-instance gaps instead.
struct SizeSummary {
  std::string size;
  std::size_t count = 0;
  std::size_t failed = 0;
  double mean_initial = 0.0;
  double mean_makespan = 0.0;
  std::optional<double> mean_optimum;
  std::optional<double> gap;
  std::optional<double> mean_instance_gap;
  double mean_seconds = 0.0;
};

struct BenchmarkReport {
  ReportConfig config;
  std::vector<InstanceResult> instances;

  /// In order of first appearance.
  std::vector<SizeSummary> summaries() const;
};

std::string report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(std::string_view text);
BenchmarkReport read_report(const std::filesystem::path& path);

/// Aligned per-instance rows followed by one mean row per size.
std::string render_report_table(const BenchmarkReport& report);

/// Side-by-side makespans of several runs over the same instance set. Throws
/// std::invalid_argument if the instance sets differ.
std::string render_comparison(std::span<const BenchmarkReport> reports,
                              std::span<const std::string> labels);

/// CSV "step,<label>..." of the mean best-so-far makespan after each step.
std::string iteration_series(std::span<const BenchmarkReport> reports,
                             std::span<const std::string> labels);

/// CSV "label,step,mean_seconds,mean_makespan": makespan against search time.
std::string wallclock_series(std::span<const BenchmarkReport> reports,
                             std::span<const std::string> labels);

/// CSV "label,action,count".
std::string action_frequency_series(std::span<const BenchmarkReport> reports,
                                    std::span<const std::string> labels);

/// CSV "rtg_factor,count,mean_makespan,ci95_low,ci95_high", one row per
/// distinct factor in ascending order, normal-approximation intervals.
std::string rtg_factor_series(std::span<const BenchmarkReport> reports);

}  // namespace nls
