#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "nls/instance.hpp"
#include "nls/neighborhoods.hpp"
#include "nls/solution.hpp"

namespace nls {

/// A: accept/reject only (operator fixed to CT). AN: accept x {CT, CET,
/// ECET, CEI}. ANP: AN plus the perturbation operator.
enum class ActionSet { a, an, anp };

int action_count(ActionSet set);
std::string_view to_string(ActionSet set);
ActionSet parse_action_set(std::string_view name);

struct Action {
  bool accept = false;
  OperatorId op = OperatorId::ct;

  bool operator==(const Action&) const = default;
};

/// action_id = 2 * operator_index + accept. Throws std::out_of_range for ids
/// outside the set.
Action decode_action(int action_id, ActionSet set);
int encode_action(Action action, ActionSet set);

struct EngineConfig {
  ActionSet action_set = ActionSet::anp;
  int episode_len = 200;
  std::uint64_t seed = 0;
  int perturb_strength = 5;
  double rtg_factor = 1.0;
  int context_length = 50;
};

inline constexpr std::size_t kFeatureCount = 11;

/// Explicit search-state features. raw holds exact integers:
///   0 current makespan, 1 best makespan, 2 last accept,
///   3..7 one-hot last operator (CT, CET, ECET, CEI, PERTURB),
///   8 step, 9 consecutive steps without improvement, 10 perturbations.
/// normalized() divides makespans by the instance lower bound and the step by
/// the episode length.
struct FeatureVector {
  std::array<std::int64_t, kFeatureCount> raw{};
  Time lower_bound = 1;
  int episode_len = 1;

  std::array<double, kFeatureCount> normalized() const;
  bool operator==(const FeatureVector&) const = default;

  static const std::array<std::string_view, kFeatureCount>& names();
};

struct SearchState {
  EngineConfig config;
  int step = 0;
  Solution current;
  Solution incumbent_before_last;
  Solution best;
  bool last_accept = false;
  std::optional<OperatorId> last_operator;
  int no_improve_steps = 0;
  int perturb_count = 0;
  std::int64_t rtg = 0;
  Time lower_bound = 0;
  Time initial_makespan = 0;
  std::mt19937_64 rng;

  bool done() const { return step >= config.episode_len; }
};

/// Starts an episode from the FDD/MWKR schedule with rtg set to the
/// lower-bound prior.
SearchState reset(const Instance& instance, const EngineConfig& config);

FeatureVector features(const SearchState& state);

struct StepResult {
  FeatureVector features;
  std::int64_t reward = 0;
  bool done = false;
  bool no_op = false;  // the neighborhood was empty
};

/// One search iteration: optionally revert the last move, apply the chosen
/// operator to the current solution and pay max(m_prev - m_new, 0). Throws
/// std::logic_error on a finished episode and std::out_of_range on an id
/// outside the configured action set.
StepResult step(const Instance& instance, SearchState& state, int action_id);

}  // namespace nls
