#include "nls/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace nls {

std::int64_t rtg_prior(Time initial_makespan, Time lower_bound, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("rtg factor must be positive");
  return std::llround(static_cast<double>(initial_makespan) -
                      factor * static_cast<double>(lower_bound));
}

std::vector<double> rtg_factor_sweep() {
  std::vector<double> factors;
  for (int k = 1; k <= 35; ++k) factors.push_back(k / 20.0);
  return factors;
}

int greedy_policy(const PolicyRequest& request, const GreedyOptions& options) {
  const auto& w = request.window;
  bool accept = true;
  const int last = w.size() - 1;
  if (last >= 1 && !w.padded[last] && !w.padded[last - 1])
    accept = w.rtg[last - 1] - w.rtg[last] > 0;

  OperatorId op = options.op;
  if (request.action_set == ActionSet::a) {
    op = OperatorId::ct;
  } else if (options.round_robin) {
    op = kNeighborhoodOperators[static_cast<std::size_t>(request.step) %
                                kNeighborhoodOperators.size()];
  }
  return encode_action(Action{accept, op}, request.action_set);
}

int random_policy(ActionSet set, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, action_count(set) - 1);
  return pick(rng);
}

std::vector<std::size_t> action_frequencies(std::span<const Trajectory> trajectories,
                                            ActionSet set) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(action_count(set)), 0);
  for (const auto& trajectory : trajectories)
    for (const auto& record : trajectory.records)
      ++counts.at(static_cast<std::size_t>(record.action));
  return counts;
}

}  // namespace nls
