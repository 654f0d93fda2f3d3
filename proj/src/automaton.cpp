#include "kplan/automaton.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "kplan/errors.hpp"

namespace kplan {

namespace {

using nlohmann::json;

std::string dims(std::size_t t, StateId s, ActionId a) {
  return "(t=" + std::to_string(t) + ", s=" + std::to_string(s) + ", a=" + std::to_string(a) + ")";
}

}  // namespace

TimedDfa::TimedDfa(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
                   std::vector<StateId> transition, std::vector<double> reward)
    : TimedDfa(num_states, num_actions, horizon, horizon + 1, std::move(transition),
               std::move(reward)) {}

TimedDfa TimedDfa::time_invariant(std::size_t num_states, std::size_t num_actions,
                                  std::size_t horizon, std::vector<StateId> transition,
                                  std::vector<double> reward) {
  return TimedDfa(num_states, num_actions, horizon, 1, std::move(transition), std::move(reward));
}

TimedDfa::TimedDfa(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
                   std::size_t slices, std::vector<StateId> transition,
                   std::vector<double> reward)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      slices_(slices),
      transition_(std::move(transition)),
      reward_(std::move(reward)) {
  if (num_states_ == 0) throw ValidationError("automaton needs at least one state");
  if (num_actions_ == 0) throw ValidationError("automaton needs at least one action");
  if (num_states_ > std::numeric_limits<StateId>::max()) {
    throw ValidationError("too many states");
  }
  if (num_actions_ > std::numeric_limits<ActionId>::max()) {
    throw ValidationError("too many actions");
  }
  const std::size_t expected = slices_ * num_states_ * num_actions_;
  if (transition_.size() != expected || reward_.size() != expected) {
    throw ValidationError("transition/reward tables must hold " + std::to_string(expected) +
                          " entries");
  }
  for (std::size_t i = 0; i < transition_.size(); ++i) {
    if (transition_[i] >= num_states_) {
      throw ValidationError("transition entry " + std::to_string(i) + " points to state " +
                            std::to_string(transition_[i]) + " outside [0, " +
                            std::to_string(num_states_) + ")");
    }
  }
}

StepResult TimedDfa::step(std::size_t t, StateId s, ActionId a) const {
  if (t > horizon_ || s >= num_states_ || a >= num_actions_) {
    throw ContractViolation("step index out of range " + dims(t, s, a));
  }
  return {next_state(t, s, a), reward(t, s, a)};
}

void TimedDfa::check_state(StateId s) const {
  if (s >= num_states_) {
    throw ContractViolation("state " + std::to_string(s) + " outside [0, " +
                            std::to_string(num_states_) + ")");
  }
}

bool operator==(const TimedDfa& lhs, const TimedDfa& rhs) {
  if (lhs.num_states_ != rhs.num_states_ || lhs.num_actions_ != rhs.num_actions_ ||
      lhs.horizon_ != rhs.horizon_) {
    return false;
  }
  for (std::size_t t = 0; t <= lhs.horizon_; ++t) {
    for (StateId s = 0; s < lhs.num_states_; ++s) {
      for (ActionId a = 0; a < lhs.num_actions_; ++a) {
        if (lhs.next_state(t, s, a) != rhs.next_state(t, s, a) ||
            lhs.reward(t, s, a) != rhs.reward(t, s, a)) {
          return false;
        }
      }
    }
  }
  return true;
}

Trajectory rollout(const TimedDfa& dfa, StateId s0, SymbolView seq) {
  if (seq.size() != dfa.num_steps()) {
    throw LengthError("rollout needs " + std::to_string(dfa.num_steps()) +
                      " actions, got " + std::to_string(seq.size()));
  }
  dfa.check_state(s0);
  Trajectory traj;
  traj.states.reserve(seq.size() + 1);
  traj.rewards.reserve(seq.size());
  traj.states.push_back(s0);
  StateId s = s0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    auto [next, r] = dfa.step(t, s, seq[t]);
    traj.rewards.push_back(r);
    traj.total_reward += r;
    traj.states.push_back(next);
    s = next;
  }
  return traj;
}

double total_reward(const TimedDfa& dfa, StateId s0, SymbolView seq) {
  return rollout(dfa, s0, seq).total_reward;
}

Policy::Policy(std::size_t horizon, std::size_t num_states)
    : horizon_(horizon), num_states_(num_states), table_((horizon + 1) * num_states) {}

Policy Policy::constant(std::size_t horizon, std::size_t num_states, ActionId a) {
  Policy pi(horizon, num_states);
  for (auto& entry : pi.table_) entry = a;
  return pi;
}

void Policy::set(std::size_t t, StateId s, ActionId a) {
  if (t > horizon_ || s >= num_states_) {
    throw ContractViolation("policy index out of range");
  }
  table_[t * num_states_ + s] = a;
}

std::optional<ActionId> Policy::at(std::size_t t, StateId s) const {
  if (t > horizon_ || s >= num_states_) return std::nullopt;
  return table_[t * num_states_ + s];
}

ActionSequence execute_policy(const TimedDfa& dfa, StateId s0, const Policy& pi) {
  dfa.check_state(s0);
  ActionSequence seq;
  seq.reserve(dfa.num_steps());
  StateId s = s0;
  for (std::size_t t = 0; t <= dfa.horizon(); ++t) {
    auto a = pi.at(t, s);
    if (!a) {
      throw MissingEntry("policy undefined at t=" + std::to_string(t) +
                         ", s=" + std::to_string(s));
    }
    seq.push_back(*a);
    s = dfa.step(t, s, *a).next;
  }
  return seq;
}

std::string dfa_to_json(const TimedDfa& dfa) {
  json transition = json::array();
  json reward = json::array();
  for (std::size_t t = 0; t <= dfa.horizon(); ++t) {
    json ft = json::array();
    json rt = json::array();
    for (StateId s = 0; s < dfa.num_states(); ++s) {
      json fs = json::array();
      json rs = json::array();
      for (ActionId a = 0; a < dfa.num_actions(); ++a) {
        fs.push_back(dfa.next_state(t, s, a));
        rs.push_back(dfa.reward(t, s, a));
      }
      ft.push_back(std::move(fs));
      rt.push_back(std::move(rs));
    }
    transition.push_back(std::move(ft));
    reward.push_back(std::move(rt));
  }
  json doc = {{"num_states", dfa.num_states()},
              {"num_actions", dfa.num_actions()},
              {"horizon", dfa.horizon()},
              {"transition", std::move(transition)},
              {"reward", std::move(reward)}};
  return doc.dump() + "\n";
}

TimedDfa dfa_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  }
  try {
    const auto num_states = doc.at("num_states").get<std::size_t>();
    const auto num_actions = doc.at("num_actions").get<std::size_t>();
    const auto horizon = doc.at("horizon").get<std::size_t>();
    const auto& ft = doc.at("transition");
    const auto& rt = doc.at("reward");
    if (!ft.is_array() || !rt.is_array() || ft.size() != horizon + 1 ||
        rt.size() != horizon + 1) {
      throw ValidationError("transition/reward must have horizon+1 time slices");
    }
    std::vector<StateId> transition;
    std::vector<double> reward;
    transition.reserve((horizon + 1) * num_states * num_actions);
    reward.reserve(transition.capacity());
    for (std::size_t t = 0; t <= horizon; ++t) {
      if (ft[t].size() != num_states || rt[t].size() != num_states) {
        throw ValidationError("time slice " + std::to_string(t) + " must list every state");
      }
      for (std::size_t s = 0; s < num_states; ++s) {
        if (ft[t][s].size() != num_actions || rt[t][s].size() != num_actions) {
          throw ValidationError("entry [" + std::to_string(t) + "][" + std::to_string(s) +
                                "] must list every action");
        }
        for (std::size_t a = 0; a < num_actions; ++a) {
          transition.push_back(ft[t][s][a].get<StateId>());
          reward.push_back(rt[t][s][a].get<double>());
        }
      }
    }
    return TimedDfa(num_states, num_actions, horizon, std::move(transition), std::move(reward));
  } catch (const json::exception& e) {
    throw ParseError(std::string("automaton JSON: ") + e.what());
  }
}

void save_dfa(const TimedDfa& dfa, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dfa_to_json(dfa);
}

TimedDfa load_dfa(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return dfa_from_json(buf.str());
}

}  // namespace kplan
