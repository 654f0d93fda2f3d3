#pragma once

#include <span>
#include <string>
#include <vector>

#include "kplan/automaton.hpp"

namespace kplan {

/// Absolute tolerance when collecting argmax actions.
inline constexpr double kTieTolerance = 1e-9;

/// Finite-horizon backward induction results: V_t(s) for t = 0..T+1,
/// Q_t(s,a) for t = 0..T and the optimal-action sets Pi(t,s), sorted by index.
class PlanTables {
 public:
  PlanTables(std::size_t horizon, std::size_t num_states, std::size_t num_actions);

  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }

  double value(std::size_t t, StateId s) const { return values_[t * num_states_ + s]; }
  double q(std::size_t t, StateId s, ActionId a) const {
    return q_[(t * num_states_ + s) * num_actions_ + a];
  }
  std::span<const ActionId> optimal_actions(std::size_t t, StateId s) const {
    return optimal_[t * num_states_ + s];
  }
  /// V_t(.) for one t, indexed by state.
  std::span<const double> value_slice(std::size_t t) const {
    return {values_.data() + t * num_states_, num_states_};
  }

  friend bool operator==(const PlanTables&, const PlanTables&) = default;

 private:
  friend PlanTables backward_induction(const TimedDfa&);
  friend PlanTables backward_induction_serial(const TimedDfa&);
  friend void fill_state(const TimedDfa&, PlanTables&, std::size_t, StateId);

  std::size_t horizon_;
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> values_;
  std::vector<double> q_;
  std::vector<std::vector<ActionId>> optimal_;
};

/// OpenMP over the states of each time slice. Identical output to the serial
/// version for any thread count.
PlanTables backward_induction(const TimedDfa& dfa);

/// Single-threaded reference.
PlanTables backward_induction_serial(const TimedDfa& dfa);

/// V_0(s0). Throws ContractViolation on a bad state.
double optimal_value(const PlanTables& tables, StateId s0);

/// "t,s,value" rows for t = 0..T+1.
std::string value_function_csv(const PlanTables& tables);

}  // namespace kplan
