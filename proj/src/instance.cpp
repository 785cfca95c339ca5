#include "nls/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nls {

namespace {

// Park-Miller minimal standard generator in Schrage's formulation, as used by
// Taillard to publish the benchmark seeds.
class TaillardLcg {
 public:
  explicit TaillardLcg(std::int32_t seed) : seed_(seed) {}

  int uniform(int low, int high) {
    constexpr std::int64_t a = 16807, b = 127773, c = 2836, m = 2147483647;
    std::int64_t k = seed_ / b;
    seed_ = a * (seed_ % b) - k * c;
    if (seed_ < 0) seed_ += m;
    double value_0_1 = static_cast<double>(seed_) / static_cast<double>(m);
    return low + static_cast<int>(value_0_1 * (high - low + 1));
  }

 private:
  std::int64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Maps to [1, 2^31 - 2]; 0 and m are fixed points of the LCG.
std::int32_t lcg_seed(std::uint64_t& state) {
  return static_cast<std::int32_t>(splitmix64(state) % 2147483646ULL + 1);
}

}  // namespace

Instance::Instance(int num_jobs, int num_machines, std::vector<Time> proc_time,
                   std::vector<int> machine_of)
    : num_jobs_(num_jobs),
      num_machines_(num_machines),
      proc_time_(std::move(proc_time)),
      machine_of_(std::move(machine_of)) {
  if (num_jobs_ < 1 || num_machines_ < 1)
    throw std::invalid_argument("instance dimensions must be positive");
  const auto n = static_cast<std::size_t>(num_jobs_) * num_machines_;
  if (proc_time_.size() != n || machine_of_.size() != n)
    throw std::invalid_argument("instance matrices do not match dimensions");
  for (Time p : proc_time_)
    if (p < 1) throw std::invalid_argument("processing times must be >= 1");

  op_on_machine_.assign(n, -1);
  for (int job = 0; job < num_jobs_; ++job) {
    for (int op = 0; op < num_machines_; ++op) {
      int machine = machine_of_[index(job, op)];
      if (machine < 0 || machine >= num_machines_ ||
          op_on_machine_[index(job, machine)] != -1)
        throw std::invalid_argument("machine order of job " +
                                    std::to_string(job) +
                                    " is not a permutation");
      op_on_machine_[index(job, machine)] = op;
    }
  }
}

Instance Instance::from_rows(const std::vector<std::vector<Time>>& proc_time,
                             const std::vector<std::vector<int>>& machine_of) {
  if (proc_time.empty() || proc_time.size() != machine_of.size())
    throw std::invalid_argument("instance rows do not match");
  const int jobs = static_cast<int>(proc_time.size());
  const int machines = static_cast<int>(proc_time.front().size());
  std::vector<Time> p;
  std::vector<int> mo;
  for (int j = 0; j < jobs; ++j) {
    if (static_cast<int>(proc_time[j].size()) != machines ||
        static_cast<int>(machine_of[j].size()) != machines)
      throw std::invalid_argument("ragged instance rows");
    p.insert(p.end(), proc_time[j].begin(), proc_time[j].end());
    mo.insert(mo.end(), machine_of[j].begin(), machine_of[j].end());
  }
  return Instance(jobs, machines, std::move(p), std::move(mo));
}

Time lower_bound(const Instance& instance) {
  std::vector<Time> load(instance.num_machines(), 0);
  for (int job = 0; job < instance.num_jobs(); ++job)
    for (int op = 0; op < instance.num_machines(); ++op)
      load[instance.machine_of(job, op)] += instance.proc_time(job, op);
  return *std::max_element(load.begin(), load.end());
}

Instance generate_taillard(int num_jobs, int num_machines,
                           std::int32_t time_seed, std::int32_t machine_seed) {
  if (num_jobs < 1 || num_machines < 1)
    throw std::invalid_argument("instance dimensions must be positive");
  const auto n = static_cast<std::size_t>(num_jobs) * num_machines;
  std::vector<Time> proc(n);
  TaillardLcg times(time_seed);
  for (auto& p : proc) p = times.uniform(1, 99);

  std::vector<int> machines(n);
  TaillardLcg shuffle(machine_seed);
  for (int job = 0; job < num_jobs; ++job) {
    auto row = machines.begin() + static_cast<std::ptrdiff_t>(job) * num_machines;
    for (int k = 0; k < num_machines; ++k) row[k] = k;
    for (int k = 0; k < num_machines; ++k)
      std::swap(row[k], row[shuffle.uniform(k, num_machines - 1)]);
  }
  return Instance(num_jobs, num_machines, std::move(proc), std::move(machines));
}

Instance generate_instance(int num_jobs, int num_machines, std::uint64_t seed) {
  std::uint64_t state = seed;
  std::int32_t time_seed = lcg_seed(state);
  std::int32_t machine_seed = lcg_seed(state);
  return generate_taillard(num_jobs, num_machines, time_seed, machine_seed);
}

}  // namespace nls
