#include "kplan/planner_dp.hpp"

#include <limits>

#include "kplan/errors.hpp"
#include "kplan/export.hpp"

namespace kplan {

PlanTables::PlanTables(std::size_t horizon, std::size_t num_states, std::size_t num_actions)
    : horizon_(horizon),
      num_states_(num_states),
      num_actions_(num_actions),
      values_((horizon + 2) * num_states, 0.0),
      q_((horizon + 1) * num_states * num_actions, 0.0),
      optimal_((horizon + 1) * num_states) {}

// Q_t(s,.), V_t(s) and Pi(t,s) from V_{t+1}. Touches only row (t,s).
void fill_state(const TimedDfa& dfa, PlanTables& out, std::size_t t, StateId s) {
  const std::size_t S = out.num_states_;
  const std::size_t A = out.num_actions_;
  const double* next = out.values_.data() + (t + 1) * S;
  double* q = out.q_.data() + (t * S + s) * A;

  double best = -std::numeric_limits<double>::infinity();
  for (ActionId a = 0; a < A; ++a) {
    q[a] = dfa.reward(t, s, a) + next[dfa.next_state(t, s, a)];
    if (q[a] > best) best = q[a];
  }
  out.values_[t * S + s] = best;

  auto& pi = out.optimal_[t * S + s];
  pi.clear();
  for (ActionId a = 0; a < A; ++a) {
    if (q[a] >= best - kTieTolerance) pi.push_back(a);
  }
}

PlanTables backward_induction(const TimedDfa& dfa) {
  PlanTables out(dfa.horizon(), dfa.num_states(), dfa.num_actions());
  const auto S = static_cast<std::int64_t>(dfa.num_states());
  for (std::size_t t = dfa.horizon() + 1; t-- > 0;) {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < S; ++s) {
      fill_state(dfa, out, t, static_cast<StateId>(s));
    }
  }
  return out;
}

PlanTables backward_induction_serial(const TimedDfa& dfa) {
  PlanTables out(dfa.horizon(), dfa.num_states(), dfa.num_actions());
  for (std::size_t t = dfa.horizon() + 1; t-- > 0;) {
    for (StateId s = 0; s < dfa.num_states(); ++s) fill_state(dfa, out, t, s);
  }
  return out;
}

double optimal_value(const PlanTables& tables, StateId s0) {
  if (s0 >= tables.num_states()) {
    throw ContractViolation("state " + std::to_string(s0) + " outside [0, " +
                            std::to_string(tables.num_states()) + ")");
  }
  return tables.value(0, s0);
}

std::string value_function_csv(const PlanTables& tables) {
  std::string out = "t,s,value\n";
  for (std::size_t t = 0; t <= tables.horizon() + 1; ++t) {
    for (StateId s = 0; s < tables.num_states(); ++s) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(s);
      out += ',';
      out += format_number(tables.value(t, s));
      out += '\n';
    }
  }
  return out;
}

}  // namespace kplan
