#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nls/engine.hpp"
#include "nls/instance.hpp"
#include "nls/policy.hpp"
#include "nls/report.hpp"
#include "nls/trajectory.hpp"

namespace nls {

struct NamedInstance {
  std::string id;
  Instance instance;
};

struct InstanceSize {
  int jobs = 0;
  int machines = 0;
};

/// "15x15" -> {15, 15}; throws std::invalid_argument otherwise.
InstanceSize parse_size(std::string_view text);

/// The eight Taillard sizes 15x15 ... 100x20.
const std::vector<InstanceSize>& taillard_sizes();

/// Writes `count` canonical instance files per size as
/// <out_dir>/<j>x<m>_<index>.jsonl and returns their paths. Instance seeds
/// derive from (seed, size, index), so reruns produce identical bytes.
std::vector<std::filesystem::path> generate_instance_files(
    const std::vector<InstanceSize>& sizes, int count, std::uint64_t seed,
    const std::filesystem::path& out_dir);

/// Files are read as given; directories contribute their *.txt and *.jsonl
/// files in name order. The instance id is the file stem.
std::vector<NamedInstance> load_instances(const std::vector<std::filesystem::path>& paths);

/// Makes one policy per episode; called from worker threads.
using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

struct RunOptions {
  EngineConfig engine;
  int threads = 1;
};

/// Runs one episode per instance. A failing episode is recorded with its
/// error and the run continues.
BenchmarkReport solve_instances(const std::vector<NamedInstance>& instances,
                                const PolicyFactory& make_policy,
                                const RunOptions& options, ReportConfig config,
                                const std::map<std::string, KnownBounds>& bounds = {});

/// Finalized dataset of one trajectory per instance. Any failing episode
/// aborts the whole dataset.
Dataset build_dataset(const std::vector<NamedInstance>& instances,
                      const PolicyFactory& make_policy, const RunOptions& options);

}  // namespace nls
