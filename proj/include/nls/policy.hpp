#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nls/engine.hpp"
#include "nls/trajectory.hpp"

namespace nls {

/// Initial return-to-go round(m_init - factor * m_lb). factor 1.0 gives the
/// optimistic prior m_init - m_lb.
std::int64_t rtg_prior(Time initial_makespan, Time lower_bound, double factor);

/// Factors 0.05, 0.10, ..., 1.75.
std::vector<double> rtg_factor_sweep();

/// Sent to the policy once per episode.
struct EpisodeInfo {
  std::string instance_id;
  int num_jobs = 0;
  int num_machines = 0;
  Time lower_bound = 0;
  Time initial_makespan = 0;
  ActionSet action_set = ActionSet::anp;
  int episode_len = 0;
  int context_length = 0;
};

/// What a policy sees when asked to act at step t.
struct PolicyRequest {
  int step = 0;
  std::int64_t rtg = 0;
  FeatureVector features;
  ContextWindow window;
  ActionSet action_set = ActionSet::anp;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_episode(const EpisodeInfo&) {}
  /// Returns an action id valid for request.action_set; throws on failure.
  virtual int act(const PolicyRequest& request) = 0;
};

struct GreedyOptions {
  OperatorId op = OperatorId::ct;
  bool round_robin = false;  // cycle CT, CET, ECET, CEI by step
};

/// Accept iff the last step improved the current makespan, visible as a drop
/// in return-to-go between the last two real slots. At t = 0 it accepts.
int greedy_policy(const PolicyRequest& request, const GreedyOptions& options = {});

/// Uniform over the valid ids of the action set.
int random_policy(ActionSet set, std::mt19937_64& rng);

class GreedyPolicy final : public Policy {
 public:
  explicit GreedyPolicy(GreedyOptions options = {}) : options_(options) {}
  int act(const PolicyRequest& request) override {
    return greedy_policy(request, options_);
  }

 private:
  GreedyOptions options_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  void begin_episode(const EpisodeInfo&) override { rng_.seed(seed_); }
  int act(const PolicyRequest& request) override {
    return random_policy(request.action_set, rng_);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Always the same action id.
class ConstantPolicy final : public Policy {
 public:
  explicit ConstantPolicy(int action_id) : action_id_(action_id) {}
  int act(const PolicyRequest&) override { return action_id_; }

 private:
  int action_id_;
};

/// Count of each action id over all records; ids outside
/// [0, action_count(set)) throw std::out_of_range.
std::vector<std::size_t> action_frequencies(std::span<const Trajectory> trajectories,
                                            ActionSet set);

}  // namespace nls
