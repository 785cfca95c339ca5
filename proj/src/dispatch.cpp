#include "nls/dispatch.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nls {

Time fdd(const Instance& instance, int job, int op) {
  if (op < 0 || op >= instance.num_machines())
    throw std::out_of_range("operation index out of range");
  Time total = 0;
  for (int k = 0; k <= op; ++k) total += instance.proc_time(job, k);
  return total;
}

Time mwkr(const Instance& instance, int job, int op) {
  if (op < 0 || op >= instance.num_machines())
    throw std::out_of_range("operation index out of range");
  Time total = 0;
  for (int k = op; k < instance.num_machines(); ++k)
    total += instance.proc_time(job, k);
  return total;
}

DispatchState::DispatchState(const Instance& instance)
    : machine_free_at(instance.num_machines(), 0),
      job_next_op(instance.num_jobs(), 0),
      job_ready_at(instance.num_jobs(), 0),
      machine_seq(instance.num_machines()) {}

Solution fdd_mwkr_schedule(const Instance& instance) {
  const int jobs = instance.num_jobs();
  const int m = instance.num_machines();
  DispatchState state(instance);

  // a/b < c/d  <=>  a*d < c*b  for positive denominators
  const auto ratio_less = [&](int a, int b) {
    const int oa = state.job_next_op[a];
    const int ob = state.job_next_op[b];
    const Time lhs = fdd(instance, a, oa) * mwkr(instance, b, ob);
    const Time rhs = fdd(instance, b, ob) * mwkr(instance, a, oa);
    return lhs < rhs || (lhs == rhs && a < b);
  };

  for (int dispatched = 0; dispatched < instance.num_ops(); ++dispatched) {
    Time earliest = std::numeric_limits<Time>::max();
    int machine = -1;
    for (int job = 0; job < jobs; ++job) {
      const int op = state.job_next_op[job];
      if (op == m) continue;
      const int k = instance.machine_of(job, op);
      const Time est = std::max(state.job_ready_at[job], state.machine_free_at[k]);
      if (est < earliest || (est == earliest && k < machine)) {
        earliest = est;
        machine = k;
      }
    }

    int chosen = -1;
    for (int job = 0; job < jobs; ++job) {
      const int op = state.job_next_op[job];
      if (op == m || instance.machine_of(job, op) != machine) continue;
      if (std::max(state.job_ready_at[job], state.machine_free_at[machine]) != earliest)
        continue;
      if (chosen < 0 || ratio_less(job, chosen)) chosen = job;
    }

    const int op = state.job_next_op[chosen];
    const Time finish = earliest + instance.proc_time(chosen, op);
    state.machine_free_at[machine] = finish;
    state.job_ready_at[chosen] = finish;
    ++state.job_next_op[chosen];
    state.machine_seq[machine].push_back(chosen);
  }
  return evaluate(instance, std::move(state.machine_seq));
}

}  // namespace nls
