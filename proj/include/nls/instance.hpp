#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nls {

/// Integer time unit used for durations, start times and makespans.
using Time = std::int64_t;

/// Operation `op` (0-based position in the job's routing) of job `job`.
struct OpRef {
  int job = 0;
  int op = 0;

  auto operator<=>(const OpRef&) const = default;
};

/// A j x m job-shop instance. Job i visits machine machine_of(i, k) as its
/// k-th operation for proc_time(i, k) time units; every job visits every
/// machine exactly once.
class Instance {
 public:
  /// Row-major j x m matrices. Throws std::invalid_argument if a dimension is
  /// non-positive, a time is < 1, or a routing row is not a permutation.
  Instance(int num_jobs, int num_machines, std::vector<Time> proc_time,
           std::vector<int> machine_of);

  static Instance from_rows(const std::vector<std::vector<Time>>& proc_time,
                            const std::vector<std::vector<int>>& machine_of);

  int num_jobs() const { return num_jobs_; }
  int num_machines() const { return num_machines_; }
  int num_ops() const { return num_jobs_ * num_machines_; }

  Time proc_time(int job, int op) const { return proc_time_[index(job, op)]; }
  int machine_of(int job, int op) const { return machine_of_[index(job, op)]; }
  Time proc_time(OpRef o) const { return proc_time(o.job, o.op); }
  int machine_of(OpRef o) const { return machine_of(o.job, o.op); }

  /// Position k of the operation of `job` that runs on `machine`.
  int op_on_machine(int job, int machine) const {
    return op_on_machine_[index(job, machine)];
  }

  std::span<const Time> proc_row(int job) const {
    return {proc_time_.data() + index(job, 0),
            static_cast<std::size_t>(num_machines_)};
  }
  std::span<const int> machine_row(int job) const {
    return {machine_of_.data() + index(job, 0),
            static_cast<std::size_t>(num_machines_)};
  }

  /// Dense node id job * m + op.
  int index(int job, int op) const { return job * num_machines_ + op; }

  bool operator==(const Instance& other) const {
    return num_jobs_ == other.num_jobs_ &&
           num_machines_ == other.num_machines_ &&
           proc_time_ == other.proc_time_ && machine_of_ == other.machine_of_;
  }

 private:
  int num_jobs_;
  int num_machines_;
  std::vector<Time> proc_time_;
  std::vector<int> machine_of_;
  std::vector<int> op_on_machine_;
};

/// Largest total processing time routed to a single machine. Never exceeds
/// the optimal makespan.
Time lower_bound(const Instance& instance);

/// Taillard's benchmark generator: times uniform on [1, 99] drawn from
/// `time_seed`, routings shuffled with `machine_seed`. With the published
/// seeds this reproduces the ta benchmark files exactly.
Instance generate_taillard(int num_jobs, int num_machines,
                           std::int32_t time_seed, std::int32_t machine_seed);

/// Deterministic random instance of the Taillard family for any 64-bit seed.
Instance generate_instance(int num_jobs, int num_machines, std::uint64_t seed);

}  // namespace nls
