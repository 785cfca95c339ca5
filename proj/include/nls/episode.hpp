#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nls/engine.hpp"
#include "nls/policy.hpp"
#include "nls/trajectory.hpp"

namespace nls {

/// The policy failed mid-episode; the partial trajectory is discarded.
class EpisodeError : public std::runtime_error {
 public:
  EpisodeError(const std::string& instance_id, int step, const std::string& cause)
      : std::runtime_error("episode " + instance_id + " aborted at step " +
                           std::to_string(step) + ": " + cause),
        step_(step) {}

  int step() const { return step_; }

 private:
  int step_;
};

struct EpisodeResult {
  Trajectory trajectory;  // raw: rtg unset
  Solution best;
  Time initial_makespan = 0;
  std::int64_t initial_rtg = 0;
  std::int64_t final_rtg = 0;
  std::vector<Time> best_by_step;        // after each step
  std::vector<double> seconds_by_step;   // cumulative wall clock
  double wall_seconds = 0.0;
};

/// Runs config.episode_len steps, asking the policy at each one. The policy
/// sees a live context window whose rtg values are the engine's running
/// return-to-go.
EpisodeResult run_episode(const Instance& instance, const std::string& instance_id,
                          Policy& policy, const EngineConfig& config);

}  // namespace nls
