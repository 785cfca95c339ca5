#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nls/dispatch.hpp"
#include "nls/solution.hpp"
#include "oracles.hpp"

using namespace nls;

TEST_CASE("evaluate: single operation") {
  Instance inst = Instance::from_rows({{5}}, {{0}});
  Solution s = evaluate(inst, {{0}});
  CHECK(s.makespan == 5);
  CHECK(s.start_time == std::vector<Time>{0});
}

TEST_CASE("evaluate: two jobs on one machine run back to back") {
  Instance inst = Instance::from_rows({{3}, {4}}, {{0}, {0}});
  Solution s = evaluate(inst, {{0, 1}});
  CHECK(s.makespan == 7);
  CHECK(s.start(inst, {0, 0}) == 0);
  CHECK(s.start(inst, {1, 0}) == 3);
}

TEST_CASE("evaluate: rejects non-permutations and cycles") {
  Instance inst = Instance::from_rows({{1, 1}, {1, 1}}, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(evaluate(inst, {{0, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(inst, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(inst, {{1, 0}, {0, 1}}), InfeasibleError);
  CHECK_FALSE(try_evaluate(inst, {{1, 0}, {0, 1}}).has_value());
}

TEST_CASE("evaluate matches the list-simulation oracle on random feasible sequences") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = oracle::random_instance(3, 3, rng);
    MachineSequence seq = oracle::random_feasible_sequence(inst, rng);
    Solution s = evaluate(inst, seq);
    auto ref = oracle::simulate(inst, seq);
    REQUIRE(ref.has_value());
    CHECK(s.makespan == ref->makespan);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(s.start(inst, {j, k}) == ref->start[j][k]);
    CHECK(evaluate(inst, seq) == s);
  }
}

TEST_CASE("Solution invariants hold for evaluated schedules") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = oracle::random_instance(5, 4, rng);
    Solution s = evaluate(inst, oracle::random_feasible_sequence(inst, rng));
    Time latest = 0;
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 4; ++k) {
        latest = std::max(latest, s.finish(inst, {j, k}));
        if (k + 1 < 4) CHECK(s.start(inst, {j, k + 1}) >= s.finish(inst, {j, k}));
      }
    CHECK(latest == s.makespan);
    for (int m = 0; m < 4; ++m)
      for (int p = 0; p + 1 < 5; ++p) {
        int a = s.machine_seq[m][p], b = s.machine_seq[m][p + 1];
        CHECK(s.finish(inst, {a, inst.op_on_machine(a, m)}) <=
              s.start(inst, {b, inst.op_on_machine(b, m)}));
      }
    CHECK(lower_bound(inst) <= s.makespan);
  }
}

TEST_CASE("is_feasible") {
  SUBCASE("single machine is always a chain") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      Instance inst = oracle::random_instance(5, 1, rng);
      CHECK(is_feasible(inst, oracle::random_sequence(inst, rng)));
    }
  }
  SUBCASE("crossing 2x2 sequences form a cycle") {
    Instance inst = Instance::from_rows({{2, 3}, {4, 1}}, {{0, 1}, {1, 0}});
    MachineSequence seq{{1, 0}, {0, 1}};
    CHECK(oracle::has_cycle(inst, seq));
    CHECK_FALSE(is_feasible(inst, seq));
    CHECK(is_feasible(inst, {{0, 1}, {1, 0}}));
  }
  SUBCASE("dispatch output is feasible") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
      Instance inst = oracle::random_instance(6, 5, rng);
      CHECK(is_feasible(inst, fdd_mwkr_schedule(inst).machine_seq));
    }
  }
  SUBCASE("agrees with the DFS cycle oracle on arbitrary sequences") {
    std::mt19937_64 rng(31);
    int infeasible = 0;
    for (int trial = 0; trial < 500; ++trial) {
      Instance inst = oracle::random_instance(3, 3, rng);
      MachineSequence seq = oracle::random_sequence(inst, rng);
      const bool cyclic = oracle::has_cycle(inst, seq);
      infeasible += cyclic;
      CHECK(is_feasible(inst, seq) == !cyclic);
      CHECK(oracle::simulate(inst, seq).has_value() == !cyclic);
    }
    CHECK(infeasible > 0);
  }
}

namespace {

void check_critical_path(const Instance& inst, const Solution& s, const std::vector<OpRef>& path) {
  REQUIRE_FALSE(path.empty());
  CHECK(s.start(inst, path.front()) == 0);
  CHECK(s.finish(inst, path.back()) == s.makespan);
  Time length = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    length += inst.proc_time(path[i]);
    if (i + 1 < path.size()) {
      CHECK(s.finish(inst, path[i]) == s.start(inst, path[i + 1]));
      auto next = oracle::successors(inst, s.machine_seq, path[i]);
      CHECK(std::find(next.begin(), next.end(), path[i + 1]) != next.end());
    }
  }
  CHECK(length == s.makespan);
}

}  // namespace

TEST_CASE("critical_path") {
  SUBCASE("one job: all its operations") {
    Instance inst = Instance::from_rows({{2, 3, 4}}, {{2, 0, 1}});
    Solution s = evaluate(inst, {{0}, {0}, {0}});
    CHECK(critical_path(inst, s) == std::vector<OpRef>{{0, 0}, {0, 1}, {0, 2}});
  }
  SUBCASE("two jobs on one machine: both ops") {
    Instance inst = Instance::from_rows({{3}, {4}}, {{0}, {0}});
    Solution s = evaluate(inst, {{0, 1}});
    CHECK(critical_path(inst, s) == std::vector<OpRef>{{0, 0}, {1, 0}});
  }
  SUBCASE("tie-break prefers the machine predecessor") {
    // job1 on M0 can start at 2 after job0 on M0 or after its own op on M1.
    Instance inst = Instance::from_rows({{2, 1}, {2, 1}}, {{0, 1}, {1, 0}});
    Solution s = evaluate(inst, {{0, 1}, {1, 0}});
    REQUIRE(s.makespan == 3);
    // Both (M0 pos 1) and (M1 pos 1) finish at 3; machine 0 wins.
    auto path = critical_path(inst, s);
    CHECK(path == std::vector<OpRef>{{0, 0}, {1, 1}});
  }
  SUBCASE("random 4x4: length equals the exhaustive longest path") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
      Instance inst = oracle::random_instance(4, 4, rng);
      Solution s = evaluate(inst, oracle::random_feasible_sequence(inst, rng));
      CHECK(oracle::exhaustive_longest_path(inst, s.machine_seq) == s.makespan);
      check_critical_path(inst, s, critical_path(inst, s));
    }
  }
}

TEST_CASE("critical_blocks") {
  SUBCASE("path on one machine is one block") {
    Instance inst = Instance::from_rows({{3}, {4}, {5}}, {{0}, {0}, {0}});
    Solution s = evaluate(inst, {{2, 0, 1}});
    auto path = critical_path(inst, s);
    auto blocks = critical_blocks(inst, s, path);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].size() == 3);
    CHECK(blocks[0].machine == 0);
    CHECK(blocks[0].first_position == 0);
  }
  SUBCASE("path alternating machines gives singleton blocks") {
    Instance inst = Instance::from_rows({{2, 3, 4}}, {{2, 0, 1}});
    Solution s = evaluate(inst, {{0}, {0}, {0}});
    auto path = critical_path(inst, s);
    for (const auto& b : critical_blocks(inst, s, path)) CHECK(b.size() == 1);
  }
  SUBCASE("random 5x5: matches the brute-force grouping") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
      Instance inst = oracle::random_instance(5, 5, rng);
      Solution s = evaluate(inst, oracle::random_feasible_sequence(inst, rng));
      auto path = critical_path(inst, s);
      auto blocks = critical_blocks(inst, s, path);
      auto runs = oracle::group_runs(inst, path);
      REQUIRE(blocks.size() == runs.size());
      std::size_t total = 0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        CHECK(blocks[b].ops == runs[b]);
        total += runs[b].size();
        const auto& row = s.machine_seq[blocks[b].machine];
        for (int i = 0; i < blocks[b].size(); ++i)
          CHECK(row[blocks[b].first_position + i] == blocks[b].ops[i].job);
      }
      CHECK(total == path.size());
    }
  }
}
