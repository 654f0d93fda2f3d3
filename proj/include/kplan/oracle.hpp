#pragma once

// Exhaustive reference solvers for small instances.

#include <cstdint>
#include <optional>
#include <vector>

#include "kplan/automaton.hpp"
#include "kplan/complexity.hpp"

namespace kplan {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct OptimalSet {
  double max_reward = 0.0;
  /// Every sequence whose total reward is within kTieTolerance of the
  /// maximum, in lexicographic order.
  std::vector<ActionSequence> sequences;
};

/// Throws CapExceeded when |A|^(T+1) > cap.
OptimalSet brute_force_optimal(const TimedDfa& dfa, StateId s0,
                               std::uint64_t cap = kDefaultEnumerationCap);
OptimalSet brute_force_optimal_serial(const TimedDfa& dfa, StateId s0,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// argmax over all sequences of total_reward - beta * est, lexicographically
/// smallest on exact ties.
ActionSequence brute_force_tradeoff(const TimedDfa& dfa, StateId s0, double beta,
                                    const ComplexityEstimator& est,
                                    std::uint64_t cap = kDefaultEnumerationCap);

/// d / (max est - min est), where d is the gap between the best and the
/// second-best distinct total reward (values within kTieTolerance merged).
/// Below this weight the penalised optimum is a reward-optimal sequence of
/// least complexity. nullopt when the reward is constant or every sequence
/// has the same complexity.
std::optional<double> beta_bound(const TimedDfa& dfa, StateId s0, const ComplexityEstimator& est,
                                 std::uint64_t cap = kDefaultEnumerationCap);

struct AdditiveFit {
  std::size_t num_strings = 0;
  std::size_t num_parameters = 0;
  double residual_sum_of_squares = 0.0;
  double max_abs_residual = 0.0;
};

/// Least-squares fit of est(x) ~ sum_i h_i(x_i) over every string of the
/// given length, with one free value per (position, symbol) pair.
AdditiveFit additive_fit_residual(const ComplexityEstimator& est, std::size_t alphabet_size,
                                  std::size_t length);

}  // namespace kplan
