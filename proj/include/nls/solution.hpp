#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nls/instance.hpp"

namespace nls {

/// machine_seq[k] lists the jobs in processing order on machine k.
using MachineSequence = std::vector<std::vector<int>>;

/// Sequencing decision plus its earliest-start schedule.
struct Solution {
  MachineSequence machine_seq;
  std::vector<Time> start_time;  // j x m, row-major by (job, op)
  Time makespan = 0;

  Time start(const Instance& instance, OpRef o) const {
    return start_time[instance.index(o.job, o.op)];
  }
  Time finish(const Instance& instance, OpRef o) const {
    return start(instance, o) + instance.proc_time(o);
  }

  bool operator==(const Solution&) const = default;
};

/// The machine sequences contain a precedence cycle.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Earliest-start schedule from longest paths on the disjunctive graph.
/// Throws std::invalid_argument if a row is not a job permutation and
/// InfeasibleError if the sequences are cyclic.
Solution evaluate(const Instance& instance, MachineSequence machine_seq);

/// As evaluate(), but returns nullopt for cyclic sequences.
std::optional<Solution> try_evaluate(const Instance& instance,
                                     MachineSequence machine_seq);

/// True iff job precedence plus machine order form an acyclic digraph.
bool is_feasible(const Instance& instance, const MachineSequence& machine_seq);

/// A longest path of the evaluated solution, source to sink. Ties are broken
/// deterministically: the path ends at the op finishing at the makespan with
/// the smallest (machine, position), and backtracking prefers the machine
/// predecessor over the job predecessor.
std::vector<OpRef> critical_path(const Instance& instance,
                                 const Solution& solution);

/// Maximal run of critical-path operations processed back to back on one
/// machine. first_position is the machine-sequence index of ops.front().
struct CriticalBlock {
  int machine = 0;
  int first_position = 0;
  std::vector<OpRef> ops;

  int size() const { return static_cast<int>(ops.size()); }
  bool operator==(const CriticalBlock&) const = default;
};

std::vector<CriticalBlock> critical_blocks(const Instance& instance,
                                           const Solution& solution,
                                           std::span<const OpRef> path);

/// Position of every operation in its machine sequence, indexed by
/// instance.index(job, op).
std::vector<int> machine_positions(const Instance& instance,
                                   const MachineSequence& machine_seq);

}  // namespace nls
