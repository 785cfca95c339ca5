#include "nls/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "nls/dispatch.hpp"
#include "nls/policy.hpp"

namespace nls {

int action_count(ActionSet set) {
  switch (set) {
    case ActionSet::a: return 2;
    case ActionSet::an: return 8;
    case ActionSet::anp: return 10;
  }
  return 0;
}

std::string_view to_string(ActionSet set) {
  switch (set) {
    case ActionSet::a: return "A";
    case ActionSet::an: return "AN";
    case ActionSet::anp: return "ANP";
  }
  return "?";
}

ActionSet parse_action_set(std::string_view name) {
  if (name == "A" || name == "a") return ActionSet::a;
  if (name == "AN" || name == "an") return ActionSet::an;
  if (name == "ANP" || name == "anp") return ActionSet::anp;
  throw std::invalid_argument("unknown action set '" + std::string(name) + "'");
}

Action decode_action(int action_id, ActionSet set) {
  if (action_id < 0 || action_id >= action_count(set))
    throw std::out_of_range("action " + std::to_string(action_id) +
                            " out of range for action set " +
                            std::string(to_string(set)));
  return Action{action_id % 2 == 1, static_cast<OperatorId>(action_id / 2)};
}

int encode_action(Action action, ActionSet set) {
  const int id = 2 * static_cast<int>(action.op) + (action.accept ? 1 : 0);
  if (id >= action_count(set))
    throw std::out_of_range("operator " + std::string(to_string(action.op)) +
                            " not available in action set " +
                            std::string(to_string(set)));
  return id;
}

std::array<double, kFeatureCount> FeatureVector::normalized() const {
  std::array<double, kFeatureCount> out;
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    out[i] = static_cast<double>(raw[i]);
  out[0] /= static_cast<double>(lower_bound);
  out[1] /= static_cast<double>(lower_bound);
  out[8] /= static_cast<double>(episode_len);
  return out;
}

const std::array<std::string_view, kFeatureCount>& FeatureVector::names() {
  static const std::array<std::string_view, kFeatureCount> names{
      "current_makespan", "best_makespan",   "last_accept",
      "last_op_CT",       "last_op_CET",     "last_op_ECET",
      "last_op_CEI",      "last_op_PERTURB", "step",
      "no_improve_steps", "perturb_count"};
  return names;
}

SearchState reset(const Instance& instance, const EngineConfig& config) {
  if (config.episode_len < 0) throw std::invalid_argument("episode_len must be >= 0");
  if (config.perturb_strength < 1)
    throw std::invalid_argument("perturb_strength must be >= 1");
  SearchState state;
  state.config = config;
  state.current = fdd_mwkr_schedule(instance);
  state.incumbent_before_last = state.current;
  state.best = state.current;
  state.lower_bound = lower_bound(instance);
  state.initial_makespan = state.current.makespan;
  state.rtg = rtg_prior(state.initial_makespan, state.lower_bound, config.rtg_factor);
  state.rng.seed(config.seed);
  return state;
}

FeatureVector features(const SearchState& state) {
  FeatureVector f;
  f.lower_bound = std::max<Time>(state.lower_bound, 1);
  f.episode_len = std::max(state.config.episode_len, 1);
  f.raw[0] = state.current.makespan;
  f.raw[1] = state.best.makespan;
  f.raw[2] = state.last_accept ? 1 : 0;
  if (state.last_operator) f.raw[3 + static_cast<int>(*state.last_operator)] = 1;
  f.raw[8] = state.step;
  f.raw[9] = state.no_improve_steps;
  f.raw[10] = state.perturb_count;
  return f;
}

StepResult step(const Instance& instance, SearchState& state, int action_id) {
  if (state.done()) throw std::logic_error("step on a finished episode");
  const Action action = decode_action(action_id, state.config.action_set);

  if (!action.accept) state.current = state.incumbent_before_last;
  const Time previous = state.current.makespan;
  state.incumbent_before_last = state.current;

  StepResult result;
  if (action.op == OperatorId::perturb) {
    state.current = perturb(instance, state.current, state.config.perturb_strength,
                            state.rng);
    ++state.perturb_count;
  } else {
    auto neighbor = best_neighbor(instance, state.current, action.op);
    result.no_op = neighbor.no_op();
    state.current = std::move(neighbor.solution);
  }

  result.reward = std::max<std::int64_t>(previous - state.current.makespan, 0);
  if (state.current.makespan < state.best.makespan) {
    state.best = state.current;
    state.no_improve_steps = 0;
  } else {
    ++state.no_improve_steps;
  }
  state.last_accept = action.accept;
  state.last_operator = action.op;
  state.rtg -= result.reward;
  ++state.step;

  result.features = features(state);
  result.done = state.done();
  return result;
}

}  // namespace nls
