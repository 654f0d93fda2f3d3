#pragma once

#include <cstddef>
#include <vector>

#include "kplan/automaton.hpp"
#include "kplan/complexity.hpp"
#include "kplan/errors.hpp"
#include "kplan/planner_dp.hpp"

namespace kplan {

inline constexpr std::size_t kDefaultNodeBudget = 5'000'000;

struct CopsOptions {
  std::size_t max_solutions = 1;
  std::size_t node_budget = kDefaultNodeBudget;
};

struct CopsStats {
  std::size_t nodes_expanded = 0;
  std::size_t nodes_generated = 0;
  /// Expanded parent->child pairs whose child cost is below the parent cost.
  std::size_t monotonicity_violations = 0;
  std::size_t parent_child_pairs = 0;
  /// The search stopped on node_budget before collecting max_solutions.
  bool budget_exhausted = false;
};

struct CopsResult {
  std::vector<ActionSequence> sequences;  // in goal pop order
  std::vector<double> complexities;
  CopsStats stats;
};

class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(const CopsStats& stats)
      : Error("node budget exhausted after " + std::to_string(stats.nodes_expanded) +
              " expansions without a complete sequence"),
        stats_(stats) {}

  const CopsStats& stats() const noexcept { return stats_; }

 private:
  CopsStats stats_;
};

/// Complexity-guided optimal policy search.
///
/// Runs backward induction, then a uniform-cost search from (0, s0, empty)
/// whose children follow only optimal actions Pi(t, s) and whose node cost is
/// est(prefix). Nodes at t = T+1 are never expanded; each one popped is
/// appended to the result until max_solutions are collected, the frontier is
/// empty or node_budget expansions have been spent. Ties in cost pop in
/// insertion order.
///
/// Throws BudgetExhausted when the budget runs out before the first solution.
CopsResult cops_search(const TimedDfa& dfa, StateId s0, const ComplexityEstimator& est,
                       const CopsOptions& options = {});

/// Same search over precomputed tables.
CopsResult cops_search(const TimedDfa& dfa, const PlanTables& tables, StateId s0,
                       const ComplexityEstimator& est, const CopsOptions& options = {});

struct MonotonicityReport {
  std::size_t violations = 0;
  std::size_t total_parent_child_pairs = 0;
};

MonotonicityReport monotonicity_report(const CopsResult& result);

}  // namespace kplan
