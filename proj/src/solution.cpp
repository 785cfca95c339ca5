#include "nls/solution.hpp"

#include <algorithm>
#include <string>

namespace nls {

namespace {

void check_sequences(const Instance& instance, const MachineSequence& seq) {
  if (static_cast<int>(seq.size()) != instance.num_machines())
    throw std::invalid_argument("machine_seq must have one row per machine");
  std::vector<char> seen(static_cast<std::size_t>(instance.num_jobs()));
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (static_cast<int>(seq[k].size()) != instance.num_jobs())
      throw std::invalid_argument("machine_seq row " + std::to_string(k) +
                                  " is not a permutation of the jobs");
    std::fill(seen.begin(), seen.end(), 0);
    for (int job : seq[k]) {
      if (job < 0 || job >= instance.num_jobs() || seen[job])
        throw std::invalid_argument("machine_seq row " + std::to_string(k) +
                                    " is not a permutation of the jobs");
      seen[job] = 1;
    }
  }
}

// Kahn's algorithm over job arcs (op k -> k+1) and machine arcs (position
// p -> p+1), relaxing earliest starts in topological order. Returns false on
// a cycle.
bool longest_paths(const Instance& instance, const MachineSequence& seq,
                   std::vector<Time>& start) {
  const int m = instance.num_machines();
  const int n = instance.num_ops();
  std::vector<int> machine_next(n, -1);
  std::vector<int> indegree(n, 0);
  for (int job = 0; job < instance.num_jobs(); ++job)
    for (int op = 1; op < m; ++op) ++indegree[instance.index(job, op)];
  for (int machine = 0; machine < m; ++machine) {
    const auto& row = seq[machine];
    for (std::size_t p = 0; p + 1 < row.size(); ++p) {
      int from = instance.index(row[p], instance.op_on_machine(row[p], machine));
      int to = instance.index(row[p + 1],
                              instance.op_on_machine(row[p + 1], machine));
      machine_next[from] = to;
      ++indegree[to];
    }
  }

  start.assign(n, 0);
  std::vector<int> ready;
  ready.reserve(n);
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);

  int processed = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++processed;
    const int job = v / m;
    const int op = v % m;
    const Time finish = start[v] + instance.proc_time(job, op);
    const auto relax = [&](int w) {
      start[w] = std::max(start[w], finish);
      if (--indegree[w] == 0) ready.push_back(w);
    };
    if (op + 1 < m) relax(v + 1);
    if (machine_next[v] >= 0) relax(machine_next[v]);
  }
  return processed == n;
}

}  // namespace

std::vector<int> machine_positions(const Instance& instance,
                                   const MachineSequence& machine_seq) {
  std::vector<int> pos(instance.num_ops(), -1);
  for (int machine = 0; machine < instance.num_machines(); ++machine) {
    const auto& row = machine_seq[machine];
    for (std::size_t p = 0; p < row.size(); ++p)
      pos[instance.index(row[p], instance.op_on_machine(row[p], machine))] =
          static_cast<int>(p);
  }
  return pos;
}

std::optional<Solution> try_evaluate(const Instance& instance,
                                     MachineSequence machine_seq) {
  check_sequences(instance, machine_seq);
  Solution solution;
  if (!longest_paths(instance, machine_seq, solution.start_time))
    return std::nullopt;
  solution.machine_seq = std::move(machine_seq);
  for (int job = 0; job < instance.num_jobs(); ++job)
    for (int op = 0; op < instance.num_machines(); ++op)
      solution.makespan =
          std::max(solution.makespan, solution.start_time[instance.index(job, op)] +
                                          instance.proc_time(job, op));
  return solution;
}

Solution evaluate(const Instance& instance, MachineSequence machine_seq) {
  auto solution = try_evaluate(instance, std::move(machine_seq));
  if (!solution)
    throw InfeasibleError("machine sequences contain a precedence cycle");
  return *std::move(solution);
}

bool is_feasible(const Instance& instance, const MachineSequence& machine_seq) {
  check_sequences(instance, machine_seq);
  std::vector<Time> start;
  return longest_paths(instance, machine_seq, start);
}

std::vector<OpRef> critical_path(const Instance& instance,
                                 const Solution& solution) {
  const auto pos = machine_positions(instance, solution.machine_seq);
  const auto finish = [&](OpRef o) { return solution.finish(instance, o); };

  std::optional<OpRef> last;
  for (int machine = 0; machine < instance.num_machines() && !last; ++machine) {
    const auto& row = solution.machine_seq[machine];
    for (int job : row) {
      OpRef o{job, instance.op_on_machine(job, machine)};
      if (finish(o) == solution.makespan) {
        last = o;
        break;
      }
    }
  }

  std::vector<OpRef> path{*last};
  for (;;) {
    const OpRef cur = path.back();
    const Time start = solution.start(instance, cur);
    if (start == 0) break;
    const int machine = instance.machine_of(cur);
    const int p = pos[instance.index(cur.job, cur.op)];
    if (p > 0) {
      int prev_job = solution.machine_seq[machine][p - 1];
      OpRef prev{prev_job, instance.op_on_machine(prev_job, machine)};
      if (finish(prev) == start) {
        path.push_back(prev);
        continue;
      }
    }
    // A positive earliest start is always pinned by some predecessor.
    path.push_back(OpRef{cur.job, cur.op - 1});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<CriticalBlock> critical_blocks(const Instance& instance,
                                           const Solution& solution,
                                           std::span<const OpRef> path) {
  const auto pos = machine_positions(instance, solution.machine_seq);
  std::vector<CriticalBlock> blocks;
  for (const OpRef& o : path) {
    const int machine = instance.machine_of(o);
    if (!blocks.empty() && blocks.back().machine == machine) {
      blocks.back().ops.push_back(o);
    } else {
      blocks.push_back(
          CriticalBlock{machine, pos[instance.index(o.job, o.op)], {o}});
    }
  }
  return blocks;
}

}  // namespace nls
