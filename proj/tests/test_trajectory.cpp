#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "nls/bench.hpp"
#include "nls/episode.hpp"
#include "nls/instance_io.hpp"
#include "nls/trajectory.hpp"
#include "oracles.hpp"

using namespace nls;

namespace {

TrajectoryRecord record(std::string id, std::uint64_t seed, int step, std::int64_t reward,
                        int action = 1) {
  TrajectoryRecord r;
  r.instance_id = std::move(id);
  r.seed = seed;
  r.step = step;
  r.action = action;
  r.reward = reward;
  r.features.raw[8] = step;
  r.features.lower_bound = 10;
  r.features.episode_len = 4;
  return r;
}

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_dataset(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("returns_to_go") {
  CHECK(returns_to_go(std::vector<std::int64_t>{3, 0, 2}) == std::vector<std::int64_t>{5, 2, 2});
  CHECK(returns_to_go(std::vector<std::int64_t>{7}) == std::vector<std::int64_t>{7});
  CHECK(returns_to_go(std::vector<std::int64_t>{}).empty());

  std::mt19937_64 rng(109);
  std::uniform_int_distribution<std::int64_t> reward(0, 50);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> r(1 + trial % 40);
    for (auto& x : r) x = reward(rng);
    auto g = returns_to_go(r);
    const std::size_t last = r.size() - 1;
    CHECK(g[last] == r[last]);
    for (std::size_t t = 0; t < last; ++t) CHECK(g[t] - g[t + 1] == r[t]);
  }
}

TEST_CASE("dataset round-trips through the line format") {
  Trajectory a{"a", 1, 10, {record("a", 1, 0, 4), record("a", 1, 1, 0), record("a", 1, 2, 3)}};
  Trajectory b{"b", 1, 20, {record("b", 1, 0, 0)}};
  for (auto& r : b.records) r.features.lower_bound = 20;
  std::vector<Trajectory> ts{a, b};
  Dataset raw = make_dataset(ts, ActionSet::an, 4);
  CHECK(raw.header.lower_bounds == std::map<std::string, Time>{{"a", 10}, {"b", 20}});
  CHECK(raw.records.size() == 4);

  std::stringstream buffer;
  write_dataset(raw, buffer);
  const std::string text = buffer.str();
  CHECK(text.find(R"("schema":"nls-trajectories")") != std::string::npos);
  CHECK(text.find(R"("rtg")") == std::string::npos);
  Dataset back = read_dataset(buffer);
  CHECK(back.header == raw.header);
  CHECK(back.records == raw.records);

  Dataset done = finalize(back);
  CHECK(done.records[0].rtg == 7);
  CHECK(done.records[1].rtg == 3);
  CHECK(done.records[2].rtg == 3);
  CHECK(done.records[3].rtg == 0);
  std::stringstream again;
  write_dataset(done, again);
  Dataset reread = read_dataset(again);
  CHECK(reread.records == done.records);
}

TEST_CASE("read_dataset reports the offending line") {
  const std::string header =
      R"({"type":"header","schema":"nls-trajectories","version":1,"action_set":"ANP","episode_len":4,"lower_bounds":{"a":10}})";
  const std::string good =
      R"({"instance_id":"a","seed":0,"step":0,"features":[1,1,0,0,0,0,0,0,0,0,0],"action":1,"reward":0})";
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line(good + "\n") == 1);
  CHECK(parse_error_line(header + "\n" + good + "\n{not json\n") == 3);
  CHECK(parse_error_line(header + "\n" + good + "\n" +
                         R"({"instance_id":"a","seed":0,"step":1,"features":[1,2],"action":1,"reward":0})") == 3);
  CHECK(parse_error_line(header + "\n\n" +
                         R"({"instance_id":"z","seed":0,"step":0,"features":[1,1,0,0,0,0,0,0,0,0,0],"action":1,"reward":0})") == 3);
  CHECK(parse_error_line(header + "\n" +
                         R"({"instance_id":"a","seed":0,"step":0,"features":[1,1,0,0,0,0,0,0,0,0,0],"action":1,"reward":-2})") == 2);
  std::string v2 = header;
  v2.replace(v2.find("\"version\":1"), 11, "\"version\":2");
  CHECK(parse_error_line(v2) == 1);
}

TEST_CASE("finalize rejects interleaved and unordered trajectories") {
  Dataset d;
  d.records = {record("a", 0, 0, 1), record("b", 0, 0, 1), record("a", 0, 1, 1)};
  CHECK_THROWS_AS(finalize(d), std::invalid_argument);
  d.records = {record("a", 0, 0, 1), record("a", 0, 0, 1)};
  CHECK_THROWS_AS(finalize(d), std::invalid_argument);
  d.records = {record("a", 0, 1, 1), record("a", 0, 0, 1)};
  CHECK_THROWS_AS(finalize(d), std::invalid_argument);
  // Same instance, different seeds are separate trajectories.
  d.records = {record("a", 0, 0, 1), record("a", 0, 1, 2), record("a", 1, 0, 5)};
  Dataset f = finalize(d);
  CHECK(f.records[0].rtg == 3);
  CHECK(f.records[2].rtg == 5);
}

TEST_CASE("context_window") {
  std::vector<TrajectoryRecord> rs;
  for (int t = 0; t < 6; ++t) rs.push_back(record("a", 0, t, t, 2 + t % 3));
  Dataset d;
  d.records = rs;
  rs = finalize(d).records;

  SUBCASE("padding in front at the start") {
    ContextWindow w = context_window(rs, 0, 3);
    CHECK(w.size() == 4);
    CHECK(w.real_slots() == 1);
    CHECK(w.padded == std::vector<bool>{true, true, true, false});
    CHECK(w.rtg[3] == *rs[0].rtg);
    CHECK(w.action[3] == 0);
    CHECK(w.rtg[0] == 0);
  }
  SUBCASE("matches a direct slice") {
    for (int k = 0; k <= 7; ++k)
      for (std::size_t t = 0; t < rs.size(); ++t) {
        ContextWindow w = context_window(rs, t, k);
        REQUIRE(w.size() == k + 1);
        CHECK(w.real_slots() == std::min<int>(static_cast<int>(t) + 1, k + 1));
        for (int slot = 0; slot <= k; ++slot) {
          const long long src = static_cast<long long>(t) - (k - slot);
          if (src < 0) {
            CHECK(w.padded[slot]);
            continue;
          }
          const auto& r = rs[static_cast<std::size_t>(src)];
          CHECK_FALSE(w.padded[slot]);
          CHECK(w.rtg[slot] == *r.rtg);
          CHECK(w.step[slot] == r.step);
          CHECK(w.features[slot] == r.features);
          CHECK(w.action[slot] == (slot == k ? 0 : r.action));
        }
      }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(context_window(rs, 6, 2), std::out_of_range);
    CHECK_THROWS_AS(context_window(rs, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(context_window(d.records, 2, 2), std::invalid_argument);
  }
}

TEST_CASE("episode rtg identities") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = oracle::random_instance(6, 6, rng);
    EngineConfig config;
    config.episode_len = 60;
    config.seed = trial;
    RandomPolicy policy(trial);
    EpisodeResult ep = run_episode(inst, "x", policy, config);
    REQUIRE(ep.trajectory.records.size() == 60);
    std::int64_t total = 0;
    for (const auto& r : ep.trajectory.records) {
      CHECK_FALSE(r.rtg.has_value());
      total += r.reward;
    }
    CHECK(ep.initial_rtg == rtg_prior(ep.initial_makespan, lower_bound(inst), 1.0));
    CHECK(ep.initial_rtg - total == ep.final_rtg);

    std::vector<Trajectory> ts{ep.trajectory};
    Dataset f = finalize(make_dataset(ts, config.action_set, config.episode_len));
    CHECK(*f.records.front().rtg == total);
    for (std::size_t t = 0; t + 1 < f.records.size(); ++t)
      CHECK(*f.records[t].rtg - *f.records[t + 1].rtg == f.records[t].reward);
    CHECK(*f.records.back().rtg == f.records.back().reward);
  }
}

TEST_CASE("build_dataset: 10 instances x 100 steps is 1000 records") {
  std::vector<NamedInstance> instances;
  for (int i = 0; i < 10; ++i)
    instances.push_back({"g" + std::to_string(i), generate_instance(6, 4, 500 + i)});
  RunOptions options;
  options.engine.episode_len = 100;
  options.threads = 3;
  Dataset d = build_dataset(instances, [] { return std::make_unique<GreedyPolicy>(); }, options);
  CHECK(d.records.size() == 1000);
  CHECK(d.header.lower_bounds.size() == 10);
  for (const auto& r : d.records) CHECK(r.rtg.has_value());
  for (std::size_t i = 0; i < d.records.size(); ++i)
    CHECK(d.records[i].step == static_cast<int>(i % 100));
}
