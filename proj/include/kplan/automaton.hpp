#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kplan/sequence.hpp"

namespace kplan {

struct StepResult {
  StateId next;
  double reward;
};

/// Finite-horizon, time-varying deterministic automaton with real-valued
/// rewards on transitions (a Mealy machine indexed by t = 0..T).
///
/// Tables are dense and t-major. When constructed through time_invariant()
/// only one slice is stored; lookups are identical either way.
class TimedDfa {
 public:
  /// `transition` and `reward` hold (horizon+1) * num_states * num_actions
  /// entries laid out as [t][s][a]. Throws ValidationError on bad sizes or
  /// out-of-range successor states.
  TimedDfa(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
           std::vector<StateId> transition, std::vector<double> reward);

  /// One [s][a] slice shared by every t.
  static TimedDfa time_invariant(std::size_t num_states, std::size_t num_actions,
                                 std::size_t horizon, std::vector<StateId> transition,
                                 std::vector<double> reward);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  std::size_t horizon() const noexcept { return horizon_; }
  /// T + 1, the length of a complete action sequence.
  std::size_t num_steps() const noexcept { return horizon_ + 1; }
  bool is_time_invariant() const noexcept { return slices_ == 1; }

  // Unchecked accessors for inner loops.
  StateId next_state(std::size_t t, StateId s, ActionId a) const noexcept {
    return transition_[index(t, s, a)];
  }
  double reward(std::size_t t, StateId s, ActionId a) const noexcept {
    return reward_[index(t, s, a)];
  }

  /// Checked (f_t(s,a), r_t(s,a)). Throws ContractViolation on bad indices.
  StepResult step(std::size_t t, StateId s, ActionId a) const;

  void check_state(StateId s) const;

  friend bool operator==(const TimedDfa& lhs, const TimedDfa& rhs);

 private:
  TimedDfa(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
           std::size_t slices, std::vector<StateId> transition, std::vector<double> reward);

  std::size_t index(std::size_t t, StateId s, ActionId a) const noexcept {
    std::size_t slice = slices_ == 1 ? 0 : t;
    return (slice * num_states_ + s) * num_actions_ + a;
  }

  std::size_t num_states_;
  std::size_t num_actions_;
  std::size_t horizon_;
  std::size_t slices_;
  std::vector<StateId> transition_;
  std::vector<double> reward_;
};

inline StepResult step(const TimedDfa& dfa, std::size_t t, StateId s, ActionId a) {
  return dfa.step(t, s, a);
}

struct Trajectory {
  std::vector<StateId> states;  // s_0 .. s_{T+1}
  std::vector<double> rewards;  // r_0 .. r_T
  double total_reward = 0.0;
};

/// Simulates `seq` from s0. Throws LengthError unless seq.size() == T+1.
Trajectory rollout(const TimedDfa& dfa, StateId s0, SymbolView seq);

/// Sum of rewards along `seq`, accumulated in increasing t.
double total_reward(const TimedDfa& dfa, StateId s0, SymbolView seq);

/// Deterministic policy pi(t, s); entries may be left undefined.
class Policy {
 public:
  Policy(std::size_t horizon, std::size_t num_states);

  static Policy constant(std::size_t horizon, std::size_t num_states, ActionId a);

  void set(std::size_t t, StateId s, ActionId a);
  std::optional<ActionId> at(std::size_t t, StateId s) const;

  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t num_states() const noexcept { return num_states_; }

 private:
  std::size_t horizon_;
  std::size_t num_states_;
  std::vector<std::optional<ActionId>> table_;
};

/// E(s0, pi): the action sequence pi emits from s0. Throws MissingEntry when
/// pi is undefined at a visited (t, s).
ActionSequence execute_policy(const TimedDfa& dfa, StateId s0, const Policy& pi);

/// JSON document {num_states, num_actions, horizon, transition[t][s][a], reward[t][s][a]}.
std::string dfa_to_json(const TimedDfa& dfa);
/// Throws ParseError on malformed JSON, ValidationError on bad tables.
TimedDfa dfa_from_json(std::string_view text);

void save_dfa(const TimedDfa& dfa, const std::filesystem::path& path);
TimedDfa load_dfa(const std::filesystem::path& path);

}  // namespace kplan
