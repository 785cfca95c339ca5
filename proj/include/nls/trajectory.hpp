#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nls/engine.hpp"

namespace nls {

/// One search step: the state features seen before acting, the action taken
/// and the reward it earned. rtg is absent in raw data and holds the
/// return-to-go once finalized.
struct TrajectoryRecord {
  std::string instance_id;
  std::uint64_t seed = 0;
  int step = 0;
  FeatureVector features;
  int action = 0;
  std::int64_t reward = 0;
  std::optional<std::int64_t> rtg;

  bool operator==(const TrajectoryRecord&) const = default;
};

struct Trajectory {
  std::string instance_id;
  std::uint64_t seed = 0;
  Time lower_bound = 1;
  std::vector<TrajectoryRecord> records;
};

/// output[t] = rewards[t] + ... + rewards[T].
std::vector<std::int64_t> returns_to_go(std::span<const std::int64_t> rewards);

inline constexpr int kDatasetVersion = 1;

struct DatasetHeader {
  int version = kDatasetVersion;
  ActionSet action_set = ActionSet::anp;
  int episode_len = 0;
  std::map<std::string, Time> lower_bounds;  // makespan scale per instance

  bool operator==(const DatasetHeader&) const = default;
};

struct Dataset {
  DatasetHeader header;
  std::vector<TrajectoryRecord> records;
};

Dataset make_dataset(std::span<const Trajectory> trajectories,
                     ActionSet action_set, int episode_len);

/// Header line followed by one JSON record per line. Features are stored raw;
/// normalization constants live in the header.
void write_dataset(const Dataset& dataset, std::ostream& out);
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Throws ParseError naming the offending line.
Dataset read_dataset(std::istream& in);
Dataset read_dataset(const std::filesystem::path& path);

/// Fills rtg with per-trajectory suffix sums. Trajectories are keyed by
/// (instance_id, seed) and must be contiguous with strictly increasing steps;
/// anything else throws std::invalid_argument.
Dataset finalize(Dataset raw);

/// Last K + 1 steps ending at t: K context triples (rtg, features, action)
/// plus the current (rtg, features). Real slots sit at the end; earlier slots
/// are zero-filled with padded = true. The current slot's action is 0.
struct ContextWindow {
  int context_length = 0;  // K
  std::vector<std::int64_t> rtg;
  std::vector<FeatureVector> features;
  std::vector<int> action;
  std::vector<int> step;
  std::vector<bool> padded;

  int size() const { return static_cast<int>(padded.size()); }
  int real_slots() const;
  bool operator==(const ContextWindow&) const = default;
};

/// Requires rtg on every record in the window (std::invalid_argument).
ContextWindow context_window(std::span<const TrajectoryRecord> records,
                             std::size_t t, int context_length);

}  // namespace nls
