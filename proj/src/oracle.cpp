#include "kplan/oracle.hpp"

#include <omp.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "kplan/errors.hpp"
#include "kplan/planner_dp.hpp"

namespace kplan {

namespace {

std::uint64_t checked_size(const TimedDfa& dfa, StateId s0, std::uint64_t cap) {
  dfa.check_state(s0);
  const auto n = count_sequences(dfa.num_actions(), dfa.num_steps());
  if (n > cap) {
    throw CapExceeded(std::to_string(dfa.num_actions()) + "^" + std::to_string(dfa.num_steps()) +
                      " sequences exceed the enumeration cap of " + std::to_string(cap));
  }
  return n;
}

std::int64_t chunks_for(std::uint64_t count) {
  const auto threads = static_cast<std::uint64_t>(omp_get_max_threads());
  return static_cast<std::int64_t>(std::clamp<std::uint64_t>(count / 1024, 1, 16 * threads));
}

// Visits indices [0, count) in contiguous chunks; visit(chunk, index, seq).
template <typename Visit>
void for_each_sequence(std::uint64_t count, std::size_t length, std::size_t alphabet,
                       std::int64_t chunks, Visit&& visit) {
#pragma omp parallel for schedule(static, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = count * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t end = count * static_cast<std::uint64_t>(c + 1) / chunks;
    ActionSequence buf(length);
    for (std::uint64_t i = begin; i < end; ++i) {
      sequence_from_index(i, alphabet, buf);
      visit(static_cast<std::size_t>(c), i, buf);
    }
  }
}

OptimalSet collect(const TimedDfa& dfa, StateId s0, std::uint64_t count, std::int64_t chunks,
                   bool parallel) {
  std::vector<std::vector<std::pair<double, std::uint64_t>>> found(static_cast<std::size_t>(chunks));
  std::vector<double> best(static_cast<std::size_t>(chunks), -std::numeric_limits<double>::infinity());
  auto visit = [&](std::size_t c, std::uint64_t i, SymbolView seq) {
    const double r = total_reward(dfa, s0, seq);
    if (r < best[c] - kTieTolerance) return;
    if (r > best[c]) {
      best[c] = r;
      std::erase_if(found[c], [&](const auto& e) { return e.first < r - kTieTolerance; });
    }
    found[c].emplace_back(r, i);
  };
  if (parallel) {
    for_each_sequence(count, dfa.num_steps(), dfa.num_actions(), chunks, visit);
  } else {
    ActionSequence buf(dfa.num_steps());
    for (std::uint64_t i = 0; i < count; ++i) {
      sequence_from_index(i, dfa.num_actions(), buf);
      visit(0, i, buf);
    }
  }

  OptimalSet out;
  out.max_reward = *std::max_element(best.begin(), best.end());
  for (const auto& part : found) {
    for (const auto& [r, i] : part) {
      if (r >= out.max_reward - kTieTolerance) {
        ActionSequence seq(dfa.num_steps());
        sequence_from_index(i, dfa.num_actions(), seq);
        out.sequences.push_back(std::move(seq));
      }
    }
  }
  return out;
}

}  // namespace

OptimalSet brute_force_optimal(const TimedDfa& dfa, StateId s0, std::uint64_t cap) {
  const auto count = checked_size(dfa, s0, cap);
  return collect(dfa, s0, count, chunks_for(count), true);
}

OptimalSet brute_force_optimal_serial(const TimedDfa& dfa, StateId s0, std::uint64_t cap) {
  const auto count = checked_size(dfa, s0, cap);
  return collect(dfa, s0, count, 1, false);
}

ActionSequence brute_force_tradeoff(const TimedDfa& dfa, StateId s0, double beta,
                                    const ComplexityEstimator& est, std::uint64_t cap) {
  if (!(beta >= 0.0)) throw ValidationError("beta must be nonnegative");
  const auto count = checked_size(dfa, s0, cap);
  const auto chunks = chunks_for(count);
  std::vector<double> best(static_cast<std::size_t>(chunks), -std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> arg(static_cast<std::size_t>(chunks), 0);
  for_each_sequence(count, dfa.num_steps(), dfa.num_actions(), chunks,
                    [&](std::size_t c, std::uint64_t i, SymbolView seq) {
                      const double v = total_reward(dfa, s0, seq) - beta * est.estimate(seq);
                      if (v > best[c]) {
                        best[c] = v;
                        arg[c] = i;
                      }
                    });
  std::size_t winner = 0;
  for (std::size_t c = 1; c < best.size(); ++c) {
    if (best[c] > best[winner]) winner = c;
  }
  ActionSequence out(dfa.num_steps());
  sequence_from_index(arg[winner], dfa.num_actions(), out);
  return out;
}

std::optional<double> beta_bound(const TimedDfa& dfa, StateId s0, const ComplexityEstimator& est,
                                 std::uint64_t cap) {
  const auto count = checked_size(dfa, s0, cap);
  std::vector<double> rewards(count);
  std::vector<double> complexity(count);
  for_each_sequence(count, dfa.num_steps(), dfa.num_actions(), chunks_for(count),
                    [&](std::size_t, std::uint64_t i, SymbolView seq) {
                      rewards[i] = total_reward(dfa, s0, seq);
                      complexity[i] = est.estimate(seq);
                    });
  const double top = *std::max_element(rewards.begin(), rewards.end());
  double second = -std::numeric_limits<double>::infinity();
  for (double r : rewards) {
    if (r < top - kTieTolerance) second = std::max(second, r);
  }
  if (std::isinf(second)) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(complexity.begin(), complexity.end());
  const double spread = *hi - *lo;
  if (spread <= 0.0) return std::nullopt;
  return (top - second) / spread;
}

AdditiveFit additive_fit_residual(const ComplexityEstimator& est, std::size_t alphabet_size,
                                  std::size_t length) {
  if (alphabet_size < 1 || length < 1) throw ValidationError("empty string space");
  const auto count = count_sequences(alphabet_size, length);
  if (count > 1'000'000) throw CapExceeded("additive fit limited to 10^6 strings");

  // Intercept plus one dummy per (position, symbol != 0); the full one-hot
  // design spans the same space but is rank deficient.
  const auto rows = static_cast<Eigen::Index>(count);
  const auto cols = static_cast<Eigen::Index>(1 + length * (alphabet_size - 1));
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd target(rows);
  ActionSequence buf(length);
  for (std::uint64_t i = 0; i < count; ++i) {
    sequence_from_index(i, alphabet_size, buf);
    const auto row = static_cast<Eigen::Index>(i);
    design(row, 0) = 1.0;
    for (std::size_t p = 0; p < length; ++p) {
      if (buf[p] != 0) {
        design(row, static_cast<Eigen::Index>(1 + p * (alphabet_size - 1) + buf[p] - 1)) = 1.0;
      }
    }
    target(row) = est.estimate(buf);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd residual = target - design * coef;

  AdditiveFit out;
  out.num_strings = count;
  out.num_parameters = static_cast<std::size_t>(cols);
  out.residual_sum_of_squares = residual.squaredNorm();
  out.max_abs_residual = residual.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace kplan
