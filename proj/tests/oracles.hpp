#pragma once

// Brute-force reference computations. None of these reuse the library's
// evaluation, path or neighborhood code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "nls/instance.hpp"
#include "nls/solution.hpp"

namespace oracle {

using nls::Instance;
using nls::MachineSequence;
using nls::OpRef;
using nls::Time;

struct Schedule {
  Time makespan = 0;
  std::vector<std::vector<Time>> start;  // [job][op]
};

/// Discrete-event list simulation: keep scheduling any operation that is both
/// next in its job and next on its machine, at max(job ready, machine free).
/// Stalls (returns nullopt) exactly when the sequences are cyclic.
inline std::optional<Schedule> simulate(const Instance& inst, const MachineSequence& seq) {
  const int jobs = inst.num_jobs(), m = inst.num_machines();
  std::vector<int> job_next(jobs, 0), machine_next(m, 0);
  std::vector<Time> job_ready(jobs, 0), machine_free(m, 0);
  Schedule out;
  out.start.assign(jobs, std::vector<Time>(m, -1));
  int done = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = 0; k < m; ++k) {
      if (machine_next[k] >= jobs) continue;
      const int job = seq[k][machine_next[k]];
      const int op = job_next[job];
      if (op >= m || inst.machine_of(job, op) != k) continue;
      const Time s = std::max(job_ready[job], machine_free[k]);
      out.start[job][op] = s;
      job_ready[job] = machine_free[k] = s + inst.proc_time(job, op);
      out.makespan = std::max(out.makespan, s + inst.proc_time(job, op));
      ++job_next[job];
      ++machine_next[k];
      ++done;
      progress = true;
    }
  }
  if (done != jobs * m) return std::nullopt;
  return out;
}

/// Successors in the disjunctive graph as (job, op) pairs.
inline std::vector<OpRef> successors(const Instance& inst, const MachineSequence& seq, OpRef o) {
  std::vector<OpRef> out;
  if (o.op + 1 < inst.num_machines()) out.push_back({o.job, o.op + 1});
  const int k = inst.machine_of(o);
  const auto& row = seq[k];
  for (std::size_t p = 0; p + 1 < row.size(); ++p)
    if (row[p] == o.job) {
      const int j = row[p + 1];
      for (int q = 0; q < inst.num_machines(); ++q)
        if (inst.machine_of(j, q) == k) out.push_back({j, q});
    }
  return out;
}

/// Longest path length by enumerating every path from every node (DFS, no
/// memoization). Only for acyclic sequences of tiny instances.
inline Time exhaustive_longest_path(const Instance& inst, const MachineSequence& seq) {
  Time best = 0;
  std::function<void(OpRef, Time)> walk = [&](OpRef o, Time length) {
    length += inst.proc_time(o);
    best = std::max(best, length);
    for (OpRef next : successors(inst, seq, o)) walk(next, length);
  };
  for (int j = 0; j < inst.num_jobs(); ++j)
    for (int k = 0; k < inst.num_machines(); ++k) walk({j, k}, 0);
  return best;
}

/// True iff the digraph contains a cycle (DFS colouring).
inline bool has_cycle(const Instance& inst, const MachineSequence& seq) {
  const int m = inst.num_machines();
  std::vector<int> colour(inst.num_ops(), 0);
  std::function<bool(OpRef)> visit = [&](OpRef o) {
    int& c = colour[o.job * m + o.op];
    if (c == 1) return true;
    if (c == 2) return false;
    c = 1;
    for (OpRef next : successors(inst, seq, o))
      if (visit(next)) return true;
    c = 2;
    return false;
  };
  for (int j = 0; j < inst.num_jobs(); ++j)
    for (int k = 0; k < m; ++k)
      if (visit({j, k})) return true;
  return false;
}

/// Minimum makespan over every combination of machine permutations.
inline Time brute_force_optimum(const Instance& inst) {
  const int jobs = inst.num_jobs(), m = inst.num_machines();
  std::vector<int> identity(jobs);
  for (int j = 0; j < jobs; ++j) identity[j] = j;
  MachineSequence seq(m, identity);
  Time best = std::numeric_limits<Time>::max();
  std::function<void(int)> rec = [&](int k) {
    if (k == m) {
      if (auto s = simulate(inst, seq)) best = std::min(best, s->makespan);
      return;
    }
    std::vector<int> perm = identity;
    do {
      seq[k] = perm;
      rec(k + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0);
  return best;
}

/// Random machine sequences that are feasible: the order in which a random
/// list-scheduling run visits operations.
inline MachineSequence random_feasible_sequence(const Instance& inst, std::mt19937_64& rng) {
  const int jobs = inst.num_jobs(), m = inst.num_machines();
  std::vector<int> next(jobs, 0);
  MachineSequence seq(m);
  std::vector<int> open;
  for (int j = 0; j < jobs; ++j) open.push_back(j);
  while (!open.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const std::size_t i = pick(rng);
    const int job = open[i];
    seq[inst.machine_of(job, next[job])].push_back(job);
    if (++next[job] == m) open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return seq;
}

/// Uniformly random machine rows, feasible or not.
inline MachineSequence random_sequence(const Instance& inst, std::mt19937_64& rng) {
  MachineSequence seq(inst.num_machines());
  for (auto& row : seq) {
    for (int j = 0; j < inst.num_jobs(); ++j) row.push_back(j);
    std::shuffle(row.begin(), row.end(), rng);
  }
  return seq;
}

/// Groups a path into maximal same-machine runs, returned as vectors of ops.
inline std::vector<std::vector<OpRef>> group_runs(const Instance& inst,
                                                  const std::vector<OpRef>& path) {
  std::vector<std::vector<OpRef>> runs;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i == 0 || inst.machine_of(path[i]) != inst.machine_of(path[i - 1]))
      runs.emplace_back();
    runs.back().push_back(path[i]);
  }
  return runs;
}

/// Adjacent machine pairs (machine, position) whose two jobs appear
/// consecutively on the given path.
inline std::set<std::pair<int, int>> adjacent_critical_pairs(const Instance& inst,
                                                             const MachineSequence& seq,
                                                             const std::vector<OpRef>& path) {
  std::set<std::pair<int, int>> out;
  for (int k = 0; k < inst.num_machines(); ++k)
    for (std::size_t p = 0; p + 1 < seq[k].size(); ++p)
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (path[i].job == seq[k][p] && path[i + 1].job == seq[k][p + 1] &&
            inst.machine_of(path[i]) == k && inst.machine_of(path[i + 1]) == k)
          out.insert({k, static_cast<int>(p)});
  return out;
}

/// Uniform random instance with processing times in [1, max_time].
inline Instance random_instance(int jobs, int machines, std::mt19937_64& rng, int max_time = 20) {
  std::uniform_int_distribution<int> time(1, max_time);
  std::vector<std::vector<Time>> p(jobs, std::vector<Time>(machines));
  std::vector<std::vector<int>> mo(jobs, std::vector<int>(machines));
  for (int j = 0; j < jobs; ++j) {
    for (auto& t : p[j]) t = time(rng);
    for (int k = 0; k < machines; ++k) mo[j][k] = k;
    std::shuffle(mo[j].begin(), mo[j].end(), rng);
  }
  return Instance::from_rows(p, mo);
}

/// Pearson chi-square statistic against equal expected counts.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace oracle
