#include "nls/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <thread>

#include "nls/episode.hpp"
#include "nls/instance_io.hpp"

namespace nls {

namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers; results are written
// by index so output order never depends on scheduling.
template <typename Job>
void parallel_for(std::size_t n, int threads, Job job) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) job(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

InstanceSize parse_size(std::string_view text) {
  const auto x = text.find('x');
  InstanceSize size;
  if (x == std::string_view::npos)
    throw std::invalid_argument("size must look like 15x15, got '" + std::string(text) + "'");
  const auto a = text.substr(0, x), b = text.substr(x + 1);
  auto ra = std::from_chars(a.data(), a.data() + a.size(), size.jobs);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), size.machines);
  if (ra.ec != std::errc() || rb.ec != std::errc() || ra.ptr != a.data() + a.size() ||
      rb.ptr != b.data() + b.size() || size.jobs < 1 || size.machines < 1)
    throw std::invalid_argument("size must look like 15x15, got '" + std::string(text) + "'");
  return size;
}

const std::vector<InstanceSize>& taillard_sizes() {
  static const std::vector<InstanceSize> sizes{{15, 15}, {20, 15}, {20, 20}, {30, 15},
                                               {30, 20}, {50, 15}, {50, 20}, {100, 20}};
  return sizes;
}

std::vector<std::filesystem::path> generate_instance_files(
    const std::vector<InstanceSize>& sizes, int count, std::uint64_t seed,
    const std::filesystem::path& out_dir) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& size : sizes) {
    for (int i = 0; i < count; ++i) {
      const std::uint64_t instance_seed =
          mix(seed ^ mix((static_cast<std::uint64_t>(size.jobs) << 32) ^
                         (static_cast<std::uint64_t>(size.machines) << 16) ^
                         static_cast<std::uint64_t>(i)));
      char name[64];
      std::snprintf(name, sizeof name, "%dx%d_%04d.jsonl", size.jobs, size.machines, i);
      const auto path = out_dir / name;
      write_instance_file(path, generate_instance(size.jobs, size.machines, instance_seed));
      written.push_back(path);
    }
  }
  return written;
}

std::vector<NamedInstance> load_instances(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".txt" || ext == ".jsonl"))
          found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<NamedInstance> out;
  for (const auto& f : files) out.push_back({f.stem().string(), read_instance_file(f)});
  return out;
}

BenchmarkReport solve_instances(const std::vector<NamedInstance>& instances,
                                const PolicyFactory& make_policy,
                                const RunOptions& options, ReportConfig config,
                                const std::map<std::string, KnownBounds>& bounds) {
  BenchmarkReport report;
  report.config = std::move(config);
  report.instances.resize(instances.size());
  parallel_for(instances.size(), options.threads, [&](std::size_t i) {
    const auto& [id, instance] = instances[i];
    InstanceResult& row = report.instances[i];
    row.instance_id = id;
    row.num_jobs = instance.num_jobs();
    row.num_machines = instance.num_machines();
    row.lower_bound = lower_bound(instance);
    if (auto b = bounds.find(id); b != bounds.end()) row.optimum = b->second.upper;
    try {
      auto policy = make_policy();
      auto episode = run_episode(instance, id, *policy, options.engine);
      row.initial_makespan = episode.initial_makespan;
      row.makespan = episode.best.makespan;
      row.wall_seconds = episode.wall_seconds;
      row.best_by_step = std::move(episode.best_by_step);
      row.seconds_by_step = std::move(episode.seconds_by_step);
      row.action_counts = action_frequencies(std::span(&episode.trajectory, 1),
                                             options.engine.action_set);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return report;
}

Dataset build_dataset(const std::vector<NamedInstance>& instances,
                      const PolicyFactory& make_policy, const RunOptions& options) {
  std::vector<Trajectory> trajectories(instances.size());
  parallel_for(instances.size(), options.threads, [&](std::size_t i) {
    auto policy = make_policy();
    trajectories[i] =
        run_episode(instances[i].instance, instances[i].id, *policy, options.engine)
            .trajectory;
  });
  return finalize(
      make_dataset(trajectories, options.engine.action_set, options.engine.episode_len));
}

}  // namespace nls
