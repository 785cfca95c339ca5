#include "nls/episode.hpp"

#include <chrono>

namespace nls {

EpisodeResult run_episode(const Instance& instance, const std::string& instance_id,
                          Policy& policy, const EngineConfig& config) {
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - started).count();
  };

  SearchState state = reset(instance, config);
  EpisodeResult result;
  result.initial_makespan = state.initial_makespan;
  result.initial_rtg = state.rtg;
  result.trajectory.instance_id = instance_id;
  result.trajectory.seed = config.seed;
  result.trajectory.lower_bound = state.lower_bound;

  EpisodeInfo info{instance_id,          instance.num_jobs(), instance.num_machines(),
                   state.lower_bound,    state.initial_makespan, config.action_set,
                   config.episode_len,   config.context_length};

  // Same records as the trajectory but carrying the live return-to-go.
  std::vector<TrajectoryRecord> history;
  history.reserve(static_cast<std::size_t>(config.episode_len));
  try {
    policy.begin_episode(info);
    while (!state.done()) {
      TrajectoryRecord record{instance_id, config.seed, state.step, features(state),
                              0,           0,           state.rtg};
      history.push_back(record);
      PolicyRequest request{state.step, state.rtg, record.features,
                            context_window(history, history.size() - 1,
                                           config.context_length),
                            config.action_set};
      const int action = policy.act(request);
      const StepResult outcome = step(instance, state, action);
      history.back().action = action;
      history.back().reward = outcome.reward;
      result.best_by_step.push_back(state.best.makespan);
      result.seconds_by_step.push_back(elapsed());
    }
  } catch (const std::exception& e) {
    throw EpisodeError(instance_id, state.step, e.what());
  }

  for (auto& record : history) record.rtg.reset();
  result.trajectory.records = std::move(history);
  result.best = state.best;
  result.final_rtg = state.rtg;
  result.wall_seconds = elapsed();
  return result;
}

}  // namespace nls
