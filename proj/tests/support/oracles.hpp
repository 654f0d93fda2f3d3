#pragma once

// Independent reference implementations and fixtures shared by the tests.
// Nothing here calls into the planners it is used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kplan/automaton.hpp"
#include "kplan/complexity.hpp"

namespace kplan::testing {

/// LZ76 phrase count straight from the definition: each phrase extends the
/// longest prefix of the rest that also starts at an earlier position
/// (overlap allowed) by one symbol.
inline std::size_t lz76_phrases_naive(SymbolView x) {
  const std::size_t n = x.size();
  std::size_t count = 0;
  std::size_t p = 0;
  while (p < n) {
    std::size_t best = 0;
    for (std::size_t q = 0; q < p; ++q) {
      std::size_t len = 0;
      while (p + len < n && x[q + len] == x[p + len]) ++len;
      best = std::max(best, len);
    }
    ++count;
    p += best + 1;
  }
  return count;
}

inline double lz76_bits_naive(SymbolView x) {
  return x.empty() ? 0.0 : lz76_phrases_naive(x) * std::log2(x.size() + 1.0);
}

/// Returns the same value for every string (zero complexity spread).
class ConstantEstimator final : public ComplexityEstimator {
 public:
  explicit ConstantEstimator(double v = 1.0) : v_(v) {}
  double estimate(SymbolView) const override { return v_; }
  std::string name() const override { return "constant"; }

 private:
  double v_;
};

/// Sequence length; monotone along every prefix chain.
class LengthEstimator final : public ComplexityEstimator {
 public:
  double estimate(SymbolView x) const override { return static_cast<double>(x.size()); }
  std::string name() const override { return "length"; }
};

/// Number of symbols that differ from their predecessor plus one; strictly
/// separates constant strings from the rest.
class RunsEstimator final : public ComplexityEstimator {
 public:
  double estimate(SymbolView x) const override {
    if (x.empty()) return 0.0;
    double runs = 1.0;
    for (std::size_t i = 1; i < x.size(); ++i) runs += x[i] != x[i - 1];
    return runs;
  }
  std::string name() const override { return "runs"; }
};

/// Random time-varying automaton. Integer rewards in [0, max_reward] keep sums exact.
inline TimedDfa random_dfa(std::size_t states, std::size_t actions, std::size_t horizon,
                           std::uint32_t seed, int max_reward = 3) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<StateId> pick_state(0, static_cast<StateId>(states - 1));
  std::uniform_int_distribution<int> pick_reward(0, max_reward);
  const std::size_t n = (horizon + 1) * states * actions;
  std::vector<StateId> f(n);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = pick_state(rng);
    r[i] = pick_reward(rng);
  }
  return TimedDfa(states, actions, horizon, std::move(f), std::move(r));
}

inline std::vector<ActionSequence> all_sequences(std::size_t alphabet, std::size_t length) {
  std::vector<ActionSequence> out{ActionSequence{}};
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<ActionSequence> next;
    for (const auto& prefix : out) {
      for (ActionId a = 0; a < alphabet; ++a) {
        next.push_back(prefix);
        next.back().push_back(a);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Stage dynamic program over an explicit macro list, written against the
/// checked single-step interface only. Returns V_0 for every state.
inline std::vector<double> macro_dp(const TimedDfa& dfa, std::size_t l,
                                    const std::vector<ActionSequence>& macros) {
  const std::size_t stages = dfa.num_steps() / l;
  std::vector<double> next(dfa.num_states(), 0.0);
  for (std::size_t k = stages; k-- > 0;) {
    std::vector<double> cur(dfa.num_states(), -INFINITY);
    for (StateId s0 = 0; s0 < dfa.num_states(); ++s0) {
      for (const auto& m : macros) {
        StateId s = s0;
        double r = 0.0;
        for (std::size_t j = 0; j < l; ++j) {
          const auto res = dfa.step(k * l + j, s, m[j]);
          r += res.reward;
          s = res.next;
        }
        cur[s0] = std::max(cur[s0], r + next[s]);
      }
    }
    next = std::move(cur);
  }
  return next;
}

inline std::vector<ActionSequence> constant_macros(std::size_t alphabet, std::size_t l) {
  std::vector<ActionSequence> out;
  for (ActionId a = 0; a < alphabet; ++a) out.emplace_back(l, a);
  return out;
}

}  // namespace kplan::testing
