#include "kplan/cops.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>

namespace kplan {

namespace {

constexpr std::uint32_t kNoParent = UINT32_MAX;

struct Node {
  std::uint32_t parent;
  std::uint32_t t;
  StateId state;
  ActionId action;
  double cost;
};

struct Frontier {
  double cost;
  std::uint32_t id;  // arena index doubles as insertion counter
};

struct LaterFirst {
  bool operator()(const Frontier& a, const Frontier& b) const {
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.id > b.id;
  }
};

void prefix_of(const std::vector<Node>& arena, std::uint32_t id, ActionSequence& out) {
  out.resize(arena[id].t);
  for (std::uint32_t cur = id; arena[cur].parent != kNoParent; cur = arena[cur].parent) {
    out[arena[cur].t - 1] = arena[cur].action;
  }
}

}  // namespace

CopsResult cops_search(const TimedDfa& dfa, StateId s0, const ComplexityEstimator& est,
                       const CopsOptions& options) {
  return cops_search(dfa, backward_induction(dfa), s0, est, options);
}

CopsResult cops_search(const TimedDfa& dfa, const PlanTables& tables, StateId s0,
                       const ComplexityEstimator& est, const CopsOptions& options) {
  dfa.check_state(s0);
  if (options.max_solutions == 0) throw ValidationError("max_solutions must be at least 1");
  if (options.node_budget == 0) throw ValidationError("node_budget must be at least 1");
  if (tables.horizon() != dfa.horizon() || tables.num_states() != dfa.num_states()) {
    throw ValidationError("plan tables were built for a different automaton");
  }

  const auto goal_t = static_cast<std::uint32_t>(dfa.num_steps());
  CopsResult result;
  CopsStats& stats = result.stats;

  std::vector<Node> arena;
  std::priority_queue<Frontier, std::vector<Frontier>, LaterFirst> queue;
  arena.push_back({kNoParent, 0, s0, 0, est.estimate({})});
  queue.push({arena.back().cost, 0});
  stats.nodes_generated = 1;

  ActionSequence prefix;
  prefix.reserve(goal_t);
  while (!queue.empty() && result.sequences.size() < options.max_solutions) {
    const std::uint32_t id = queue.top().id;
    queue.pop();
    const Node node = arena[id];

    if (node.t == goal_t) {
      prefix_of(arena, id, prefix);
      result.sequences.push_back(prefix);
      result.complexities.push_back(node.cost);
      continue;
    }
    if (stats.nodes_expanded == options.node_budget) {
      stats.budget_exhausted = true;
      break;
    }
    ++stats.nodes_expanded;

    prefix_of(arena, id, prefix);
    prefix.push_back(0);
    for (ActionId a : tables.optimal_actions(node.t, node.state)) {
      prefix.back() = a;
      const double cost = est.estimate(prefix);
      ++stats.parent_child_pairs;
      if (cost < node.cost) ++stats.monotonicity_violations;
      const auto child = static_cast<std::uint32_t>(arena.size());
      arena.push_back({id, node.t + 1, dfa.next_state(node.t, node.state, a), a, cost});
      queue.push({cost, child});
      ++stats.nodes_generated;
    }
  }

  if (result.sequences.empty() && stats.budget_exhausted) throw BudgetExhausted(stats);
  return result;
}

MonotonicityReport monotonicity_report(const CopsResult& result) {
  return {result.stats.monotonicity_violations, result.stats.parent_child_pairs};
}

}  // namespace kplan
