#include <gtest/gtest.h>

#include <omp.h>

#include "kplan/errors.hpp"
#include "kplan/gridworld.hpp"
#include "kplan/oracle.hpp"
#include "kplan/planner_dp.hpp"
#include "support/oracles.hpp"

namespace kplan {
namespace {

// Sequences realizable by choosing from Pi at every step.
std::size_t count_pi_sequences(const TimedDfa& dfa, const PlanTables& tables, std::size_t t,
                               StateId s) {
  if (t == dfa.num_steps()) return 1;
  std::size_t n = 0;
  for (ActionId a : tables.optimal_actions(t, s)) {
    n += count_pi_sequences(dfa, tables, t + 1, dfa.next_state(t, s, a));
  }
  return n;
}

TEST(BackwardInduction, TerminalZeroAndBellman) {
  const auto dfa = testing::random_dfa(7, 3, 5, 21);
  const auto tables = backward_induction(dfa);
  for (StateId s = 0; s < 7; ++s) EXPECT_EQ(tables.value(6, s), 0.0);
  for (std::size_t t = 0; t <= 5; ++t) {
    for (StateId s = 0; s < 7; ++s) {
      double best = -INFINITY;
      for (ActionId a = 0; a < 3; ++a) {
        const auto r = dfa.step(t, s, a);
        EXPECT_EQ(tables.q(t, s, a), r.reward + tables.value(t + 1, r.next));
        best = std::max(best, tables.q(t, s, a));
      }
      EXPECT_EQ(tables.value(t, s), best);
      const auto pi = tables.optimal_actions(t, s);
      ASSERT_FALSE(pi.empty());
      EXPECT_TRUE(std::is_sorted(pi.begin(), pi.end()));
      for (ActionId a = 0; a < 3; ++a) {
        const bool in_pi = std::find(pi.begin(), pi.end(), a) != pi.end();
        EXPECT_EQ(in_pi, tables.q(t, s, a) >= best - kTieTolerance);
      }
    }
  }
}

TEST(BackwardInduction, MatchesBruteForceOnRandomInstances) {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const auto dfa = testing::random_dfa(4 + seed % 3, 2 + seed % 3, 3 + seed % 3, seed);
    const auto tables = backward_induction(dfa);
    for (StateId s0 = 0; s0 < dfa.num_states(); ++s0) {
      ASSERT_EQ(tables.value(0, s0), brute_force_optimal(dfa, s0).max_reward) << seed;
    }
  }
}

TEST(BackwardInduction, PiSequencesAreExactlyTheOptimalSet) {
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const auto dfa = testing::random_dfa(5, 3, 4, 100 + seed, 1);
    const auto tables = backward_induction(dfa);
    const auto oracle = brute_force_optimal(dfa, 0);
    EXPECT_EQ(count_pi_sequences(dfa, tables, 0, 0), oracle.sequences.size());
  }
}

TEST(BackwardInduction, GridworldExamples) {
  for (int n : {3, 4}) {
    const Room room = build_room({.n = n});
    const auto tables = backward_induction(room.dfa);
    EXPECT_EQ(optimal_value(tables, room.start), 1.0);
  }
  const Room room3 = build_room({.n = 3});
  const auto tables3 = backward_induction(room3.dfa);
  EXPECT_EQ(count_pi_sequences(room3.dfa, tables3, 0, room3.start), 6u);
  EXPECT_THROW(optimal_value(tables3, 9), ContractViolation);
}

TEST(BackwardInduction, SingleActionAndConstantReward) {
  const auto one = TimedDfa::time_invariant(3, 1, 4, {1, 2, 0}, {1.0, 2.0, 3.0});
  const auto tables = backward_induction(one);
  EXPECT_EQ(tables.value(0, 0), 1 + 2 + 3 + 1 + 2);
  const auto flat = TimedDfa::time_invariant(2, 3, 2, {0, 1, 1, 0, 1, 0}, std::vector<double>(6, 0.5));
  const auto ft = backward_induction(flat);
  for (StateId s = 0; s < 2; ++s) {
    EXPECT_EQ(ft.value(0, s), 1.5);
    EXPECT_EQ(ft.optimal_actions(0, s).size(), 3u);
  }
}

TEST(BackwardInduction, ParallelMatchesSerialForAnyThreadCount) {
  const auto dfa = testing::random_dfa(300, 5, 12, 77, 5);
  const auto serial = backward_induction_serial(dfa);
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    EXPECT_EQ(backward_induction(dfa), serial) << threads;
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST(ValueFunctionCsv, Layout) {
  const auto dfa = TimedDfa::time_invariant(2, 1, 0, {1, 0}, {1.0, 0.25});
  EXPECT_EQ(value_function_csv(backward_induction(dfa)), "t,s,value\n0,0,1\n0,1,0.25\n1,0,0\n1,1,0\n");
}

}  // namespace
}  // namespace kplan
