#pragma once

#include <vector>

#include "nls/instance.hpp"
#include "nls/solution.hpp"

namespace nls {

/// Flow due date: work of ops 0..op of the job, inclusive.
Time fdd(const Instance& instance, int job, int op);

/// Most work remaining: work of ops op..m-1 of the job.
Time mwkr(const Instance& instance, int job, int op);

/// Bookkeeping of the non-delay dispatcher.
struct DispatchState {
  std::vector<Time> machine_free_at;
  std::vector<int> job_next_op;  // m once the job is complete
  std::vector<Time> job_ready_at;
  MachineSequence machine_seq;

  explicit DispatchState(const Instance& instance);
};

/// Non-delay schedule: at each decision the machine that can start an
/// operation earliest (lowest index on ties) receives, among the operations
/// that can start then, the one with the smallest FDD/MWKR ratio; equal
/// ratios go to the lower job index.
Solution fdd_mwkr_schedule(const Instance& instance);

}  // namespace nls
