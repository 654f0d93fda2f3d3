#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kplan/cops.hpp"
#include "kplan/gridworld.hpp"
#include "kplan/oracle.hpp"
#include "support/oracles.hpp"

namespace kplan {
namespace {

TEST(Cops, ReturnsEveryOptimalSequenceOnN3) {
  const Room room = build_room({.n = 3});
  const Lz76Estimator est;
  const auto result = cops_search(room.dfa, room.start, est, {.max_solutions = 10});
  const auto oracle = brute_force_optimal(room.dfa, room.start);
  ASSERT_EQ(result.sequences.size(), 6u);
  std::set<ActionSequence> got(result.sequences.begin(), result.sequences.end());
  EXPECT_EQ(got, std::set<ActionSequence>(oracle.sequences.begin(), oracle.sequences.end()));
  for (std::size_t i = 0; i < result.sequences.size(); ++i) {
    EXPECT_EQ(result.complexities[i], est.estimate(result.sequences[i]));
  }
}

TEST(Cops, EverySolutionIsRewardOptimal) {
  const Lz76Estimator est;
  for (std::uint32_t seed = 0; seed < 15; ++seed) {
    const auto dfa = testing::random_dfa(5, 3, 5, seed, 2);
    const double best = brute_force_optimal(dfa, 1).max_reward;
    const auto result = cops_search(dfa, 1, est, {.max_solutions = 20});
    ASSERT_FALSE(result.sequences.empty());
    for (const auto& seq : result.sequences) EXPECT_EQ(total_reward(dfa, 1, seq), best);
  }
}

TEST(Cops, ComplexitiesNondecreasingUnderMonotoneEstimator) {
  const testing::LengthEstimator length;
  const Lz76Estimator lz;
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const auto dfa = testing::random_dfa(6, 3, 5, 40 + seed, 1);
    for (const ComplexityEstimator* est : {static_cast<const ComplexityEstimator*>(&length),
                                           static_cast<const ComplexityEstimator*>(&lz)}) {
      const auto result = cops_search(dfa, 0, *est, {.max_solutions = 50});
      EXPECT_EQ(result.stats.monotonicity_violations, 0u);
      EXPECT_TRUE(std::is_sorted(result.complexities.begin(), result.complexities.end()));
    }
  }
}

TEST(Cops, FirstSolutionMinimisesComplexityWhenMonotone) {
  const Lz76Estimator est;
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const auto dfa = testing::random_dfa(4, 3, 5, 60 + seed, 1);
    const auto result = cops_search(dfa, 0, est);
    ASSERT_EQ(result.stats.monotonicity_violations, 0u);
    double best = INFINITY;
    for (const auto& seq : brute_force_optimal(dfa, 0).sequences) best = std::min(best, est.estimate(seq));
    EXPECT_EQ(result.complexities.front(), best);
  }
}

TEST(Cops, SingleActionGivesOneRow) {
  const auto dfa = TimedDfa::time_invariant(2, 1, 3, {1, 0}, {0.0, 1.0});
  const auto result = cops_search(dfa, 0, Lz76Estimator(), {.max_solutions = 5});
  ASSERT_EQ(result.sequences.size(), 1u);
  EXPECT_EQ(result.sequences[0], ActionSequence(4, 0));
  EXPECT_FALSE(result.stats.budget_exhausted);
}

TEST(Cops, ConstantEstimatorPopsInInsertionOrder) {
  // All optimal; equal costs pop FIFO, so solutions come out lexicographically.
  const auto dfa = TimedDfa::time_invariant(1, 2, 2, {0, 0}, {0.0, 0.0});
  const auto result = cops_search(dfa, 0, testing::ConstantEstimator(), {.max_solutions = 8});
  ASSERT_EQ(result.sequences.size(), 8u);
  EXPECT_TRUE(std::is_sorted(result.sequences.begin(), result.sequences.end()));
}

TEST(Cops, BudgetHandling) {
  const Room room = build_room({.n = 4});
  const Lz76Estimator est;
  EXPECT_THROW(cops_search(room.dfa, room.start, est, {.max_solutions = 1, .node_budget = 2}),
               BudgetExhausted);
  try {
    cops_search(room.dfa, room.start, est, {.max_solutions = 1, .node_budget = 2});
  } catch (const BudgetExhausted& e) {
    EXPECT_EQ(e.stats().nodes_expanded, 2u);
    EXPECT_TRUE(e.stats().budget_exhausted);
  }
  // Enough budget for some but not all requested solutions: partial result.
  const auto full = cops_search(room.dfa, room.start, est, {.max_solutions = 20});
  const auto first = cops_search(room.dfa, room.start, est, {.max_solutions = 1});
  const auto partial = cops_search(room.dfa, room.start, est,
                                   {.max_solutions = 20, .node_budget = first.stats.nodes_expanded + 1});
  EXPECT_TRUE(partial.stats.budget_exhausted);
  EXPECT_FALSE(partial.sequences.empty());
  EXPECT_LT(partial.sequences.size(), full.sequences.size());
  EXPECT_THROW(cops_search(room.dfa, room.start, est, {.max_solutions = 0}), ValidationError);
}

TEST(Cops, StatsAreConsistent) {
  const Room room = build_room({.n = 4});
  const auto result = cops_search(room.dfa, room.start, Lz76Estimator(), {.max_solutions = 5});
  const auto& s = result.stats;
  EXPECT_EQ(s.nodes_generated, s.parent_child_pairs + 1);
  const auto report = monotonicity_report(result);
  EXPECT_EQ(report.violations, s.monotonicity_violations);
  EXPECT_EQ(report.total_parent_child_pairs, s.parent_child_pairs);
}

TEST(Cops, CountsViolationsForNonMonotoneEstimator) {
  // Everything is optimal, so the whole tree is expanded; "01201" scores more
  // than "012012" under a block-3 BDM.
  const BdmEstimator bdm(std::make_shared<CtmTable>(synthetic_ctm_table(3, 3)));
  const auto dfa = TimedDfa::time_invariant(1, 3, 5, {0, 0, 0}, {0.0, 0.0, 0.0});
  const auto result = cops_search(dfa, 0, bdm, {.max_solutions = 729});
  EXPECT_EQ(result.sequences.size(), 729u);
  EXPECT_GT(result.stats.monotonicity_violations, 0u);
}

}  // namespace
}  // namespace kplan
