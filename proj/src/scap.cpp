#include "kplan/scap.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <queue>

#include "kplan/errors.hpp"

namespace kplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_list(const std::vector<double>& values, std::size_t stages, const char* what,
                bool allow_inf) {
  if (values.size() != stages) {
    throw ValidationError(std::string(what) + " must list one value per stage (" +
                          std::to_string(stages) + "), got " + std::to_string(values.size()));
  }
  for (double v : values) {
    if (std::isnan(v) || v < 0.0 || (!allow_inf && std::isinf(v))) {
      throw ValidationError(std::string(what) + " must be nonnegative" +
                            (allow_inf ? "" : " and finite"));
    }
  }
}

std::uint64_t checked_count(std::size_t alphabet_size, std::size_t length,
                            const EnumerationLimits& limits) {
  const auto n = count_sequences(alphabet_size, length);
  if (n > limits.reject_above) {
    throw CapExceeded(std::to_string(alphabet_size) + "^" + std::to_string(length) +
                      " macro-actions exceed the enumeration cap of " +
                      std::to_string(limits.reject_above));
  }
  if (n > limits.warn_above) {
    std::clog << "kplan: enumerating " << n << " macro-actions of length " << length << "\n";
  }
  return n;
}

// Contiguous chunks, merged in chunk order, so results do not depend on the
// thread count.
template <typename Visit>
void scan_chunks(std::uint64_t count, std::size_t length, std::size_t alphabet_size,
                 std::int64_t chunks, Visit&& visit) {
#pragma omp parallel for schedule(static, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = count * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t end = count * static_cast<std::uint64_t>(c + 1) / chunks;
    ActionSequence buf(length);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      sequence_from_index(idx, alphabet_size, buf);
      visit(c, buf);
    }
  }
}

std::int64_t chunk_count(std::uint64_t count) {
  const auto threads = static_cast<std::uint64_t>(omp_get_max_threads());
  return static_cast<std::int64_t>(std::clamp<std::uint64_t>(count / 4096, 1, 64 * threads));
}

bool is_constant(SymbolView m) {
  return std::adjacent_find(m.begin(), m.end(), std::not_equal_to<>()) == m.end();
}

// Scores every macro with complexity <= keep_below, also reporting the
// minimum over all of A^l.
std::pair<MacroSet, double> scan_admissible(std::size_t alphabet_size, std::size_t length,
                                            double keep_below, const ComplexityEstimator& est,
                                            const EnumerationLimits& limits, bool parallel) {
  const auto count = checked_count(alphabet_size, length, limits);
  const std::int64_t chunks = parallel ? chunk_count(count) : 1;
  std::vector<MacroSet> parts(static_cast<std::size_t>(chunks), MacroSet(length));
  std::vector<double> mins(static_cast<std::size_t>(chunks), kInf);
  auto visit = [&](std::int64_t c, SymbolView m) {
    const double k = est.estimate(m);
    auto& lo = mins[static_cast<std::size_t>(c)];
    if (k < lo) lo = k;
    if (k <= keep_below) parts[static_cast<std::size_t>(c)].push_back(m, k);
  };
  if (parallel) {
    scan_chunks(count, length, alphabet_size, chunks, visit);
  } else {
    ActionSequence buf(length);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      sequence_from_index(idx, alphabet_size, buf);
      visit(0, buf);
    }
  }
  MacroSet all(length);
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < part.size(); ++i) all.push_back(part.actions(i), part.complexity(i));
  }
  return {std::move(all), *std::min_element(mins.begin(), mins.end())};
}

MacroSet filter(const MacroSet& from, double limit) {
  MacroSet out(from.length());
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from.complexity(i) <= limit) out.push_back(from.actions(i), from.complexity(i));
  }
  return out;
}

// Value of macro i at (k, s) and its successor.
struct Candidate {
  double value;
  StateId next;
};

inline Candidate evaluate(const TimedDfa& dfa, std::size_t t0, StateId s, SymbolView macro,
                          double penalty, double complexity, std::span<const double> next_values) {
  double reward = 0.0;
  for (std::size_t j = 0; j < macro.size(); ++j) {
    reward += dfa.reward(t0 + j, s, macro[j]);
    s = dfa.next_state(t0 + j, s, macro[j]);
  }
  return {(reward - penalty * complexity) + next_values[s], s};
}

std::pair<double, std::size_t> best_macro(const TimedDfa& dfa, std::size_t t0, StateId s,
                                          const MacroSet& candidates, double penalty,
                                          std::span<const double> next_values) {
  double best = -kInf;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto c = evaluate(dfa, t0, s, candidates.actions(i), penalty, candidates.complexity(i),
                            next_values);
    if (c.value > best) {
      best = c.value;
      arg = i;
    }
  }
  return {best, arg};
}

StageTables make_tables(const TimedDfa& dfa, const StageConfig& cfg, AdmissibleSet& candidates) {
  cfg.validate(dfa);
  if (candidates.stages.size() != cfg.num_stages) {
    throw ValidationError("candidate sets must cover every stage");
  }
  for (std::size_t k = 0; k < cfg.num_stages; ++k) {
    const auto& set = candidates.stages[k];
    if (!set || set->length() != cfg.stage_length) {
      throw ValidationError("candidate set for stage " + std::to_string(k) +
                            " has the wrong macro length");
    }
    if (set->empty()) throw InfeasibleStage(k, kInf);
  }
  return StageTables(cfg.num_stages, dfa.num_states());
}

}  // namespace

StageConfig StageConfig::soft(std::size_t stage_length, std::size_t num_stages,
                              std::vector<double> betas) {
  StageConfig cfg;
  cfg.stage_length = stage_length;
  cfg.num_stages = num_stages;
  cfg.mode = StageMode::Soft;
  cfg.betas = std::move(betas);
  return cfg;
}

StageConfig StageConfig::hard(std::size_t stage_length, std::size_t num_stages,
                              std::vector<double> limits, AdmissibleMethod method,
                              std::vector<double> deltas) {
  StageConfig cfg;
  cfg.stage_length = stage_length;
  cfg.num_stages = num_stages;
  cfg.mode = StageMode::Hard;
  cfg.limits = std::move(limits);
  cfg.admissible_method = method;
  cfg.deltas = std::move(deltas);
  return cfg;
}

void StageConfig::validate(const TimedDfa& dfa) const {
  if (stage_length == 0) throw ValidationError("stage length must be positive");
  if (num_stages == 0) throw ValidationError("need at least one stage");
  if (stage_length * num_stages != dfa.num_steps()) {
    throw ValidationError("stage partition " + std::to_string(stage_length) + " x " +
                          std::to_string(num_stages) + " does not cover horizon T+1 = " +
                          std::to_string(dfa.num_steps()));
  }
  if (mode == StageMode::Soft) {
    check_list(betas, num_stages, "betas", false);
  } else {
    check_list(limits, num_stages, "limits", true);
    if (!deltas.empty()) check_list(deltas, num_stages, "deltas", true);
  }
}

void MacroSet::push_back(SymbolView actions, double complexity) {
  if (actions.size() != length_) throw LengthError("macro length mismatch");
  flat_.insert(flat_.end(), actions.begin(), actions.end());
  complexities_.push_back(complexity);
}

std::vector<ActionSequence> MacroSet::sequences() const {
  std::vector<ActionSequence> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto a = actions(i);
    out.emplace_back(a.begin(), a.end());
  }
  return out;
}

StepResult macro_step(const TimedDfa& dfa, std::size_t k, StateId s, SymbolView macro) {
  const std::size_t l = macro.size();
  if (l == 0) throw LengthError("macro-action must not be empty");
  if ((k + 1) * l > dfa.num_steps()) {
    throw ContractViolation("stage " + std::to_string(k) + " of length " + std::to_string(l) +
                            " runs past the horizon");
  }
  double reward = 0.0;
  for (std::size_t j = 0; j < l; ++j) {
    auto r = dfa.step(k * l + j, s, macro[j]);
    reward += r.reward;
    s = r.next;
  }
  return {s, reward};
}

MacroSet enumerate_macros(std::size_t alphabet_size, std::size_t length,
                          const ComplexityEstimator& est, const EnumerationLimits& limits) {
  return scan_admissible(alphabet_size, length, kInf, est, limits, true).first;
}

MacroSet enumerate_macros_serial(std::size_t alphabet_size, std::size_t length,
                                 const ComplexityEstimator& est, const EnumerationLimits& limits) {
  return scan_admissible(alphabet_size, length, kInf, est, limits, false).first;
}

AdmissibleSet enumerate_admissible(const TimedDfa& dfa, const StageConfig& cfg,
                                   const ComplexityEstimator& est,
                                   const EnumerationLimits& limits) {
  cfg.validate(dfa);
  if (cfg.mode != StageMode::Hard) throw ValidationError("admissible sets need hard mode");

  // One scan keeps everything under the loosest limit; each distinct limit is
  // then a filter of it.
  const double loosest = *std::max_element(cfg.limits.begin(), cfg.limits.end());
  auto [kept, min_complexity] =
      scan_admissible(dfa.num_actions(), cfg.stage_length, loosest, est, limits, true);

  AdmissibleSet out;
  std::map<double, std::shared_ptr<const MacroSet>> shared;
  for (std::size_t k = 0; k < cfg.num_stages; ++k) {
    auto& slot = shared[cfg.limits[k]];
    if (!slot) slot = std::make_shared<const MacroSet>(filter(kept, cfg.limits[k]));
    if (slot->empty()) throw InfeasibleStage(k, min_complexity);
    out.stages.push_back(slot);
  }
  return out;
}

UcsAdmissibleResult ucs_admissible(std::size_t alphabet_size, std::size_t length, double limit,
                                   double delta, const ComplexityEstimator& est) {
  if (alphabet_size == 0 || length == 0) throw ValidationError("empty macro space");
  struct Node {
    std::uint32_t parent;
    std::uint32_t depth;
    ActionId action;
    double cost;
  };
  struct Entry {
    double cost;
    std::uint32_t id;
  };
  auto later = [](const Entry& a, const Entry& b) {
    return a.cost != b.cost ? a.cost > b.cost : a.id > b.id;
  };

  UcsAdmissibleResult out{MacroSet(length)};
  out.min_leaf_complexity = kInf;
  const double stop_above = limit + delta;

  std::vector<Node> arena{{UINT32_MAX, 0, 0, est.estimate({})}};
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
  queue.push({arena[0].cost, 0});

  std::vector<ActionSequence> found;
  std::vector<double> found_cost;
  ActionSequence prefix;
  while (!queue.empty()) {
    const auto [cost, id] = queue.top();
    if (cost > stop_above) break;
    queue.pop();
    const Node node = arena[id];

    prefix.assign(node.depth, 0);
    for (std::uint32_t cur = id; arena[cur].parent != UINT32_MAX; cur = arena[cur].parent) {
      prefix[arena[cur].depth - 1] = arena[cur].action;
    }
    if (node.depth == length) {
      if (cost <= limit) {
        found.push_back(prefix);
        found_cost.push_back(cost);
      }
      continue;
    }
    ++out.nodes_expanded;
    prefix.push_back(0);
    for (ActionId a = 0; a < alphabet_size; ++a) {
      prefix.back() = a;
      const double child_cost = est.estimate(prefix);
      ++out.parent_child_pairs;
      if (child_cost < cost) ++out.monotonicity_violations;
      if (node.depth + 1 == length) out.min_leaf_complexity = std::min(out.min_leaf_complexity, child_cost);
      arena.push_back({id, node.depth + 1, a, child_cost});
      queue.push({child_cost, static_cast<std::uint32_t>(arena.size() - 1)});
    }
  }

  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return found[a] < found[b]; });
  for (std::size_t i : order) out.macros.push_back(found[i], found_cost[i]);
  return out;
}

UcsAdmissibleResult ucs_admissible(std::size_t alphabet_size, const StageConfig& cfg,
                                   std::size_t k, const ComplexityEstimator& est) {
  if (cfg.mode != StageMode::Hard) throw ValidationError("admissible sets need hard mode");
  if (k >= cfg.num_stages || k >= cfg.limits.size()) {
    throw ContractViolation("stage " + std::to_string(k) + " out of range");
  }
  return ucs_admissible(alphabet_size, cfg.stage_length, cfg.limits[k], cfg.delta(k), est);
}

AdmissibleSet build_candidates(const TimedDfa& dfa, const StageConfig& cfg,
                               const ComplexityEstimator& est, const EnumerationLimits& limits) {
  cfg.validate(dfa);
  if (cfg.mode == StageMode::Soft) {
    auto all = std::make_shared<const MacroSet>(
        enumerate_macros(dfa.num_actions(), cfg.stage_length, est, limits));
    return AdmissibleSet{std::vector<std::shared_ptr<const MacroSet>>(cfg.num_stages, all)};
  }
  if (cfg.admissible_method == AdmissibleMethod::Enumerate) {
    return enumerate_admissible(dfa, cfg, est, limits);
  }
  AdmissibleSet out;
  std::map<std::pair<double, double>, std::shared_ptr<const MacroSet>> shared;
  for (std::size_t k = 0; k < cfg.num_stages; ++k) {
    auto& slot = shared[{cfg.limits[k], cfg.delta(k)}];
    if (!slot) {
      auto found = ucs_admissible(dfa.num_actions(), cfg, k, est);
      if (found.macros.empty()) throw InfeasibleStage(k, found.min_leaf_complexity);
      slot = std::make_shared<const MacroSet>(std::move(found.macros));
    }
    out.stages.push_back(slot);
  }
  return out;
}

ConstantMacroThreshold constant_macro_threshold(std::size_t alphabet_size, std::size_t length,
                                                const ComplexityEstimator& est,
                                                const EnumerationLimits& limits) {
  const auto count = checked_count(alphabet_size, length, limits);
  const std::int64_t chunks = chunk_count(count);
  std::vector<double> max_const(static_cast<std::size_t>(chunks), -kInf);
  std::vector<double> min_other(static_cast<std::size_t>(chunks), kInf);
  scan_chunks(count, length, alphabet_size, chunks, [&](std::int64_t c, SymbolView m) {
    const double k = est.estimate(m);
    const auto i = static_cast<std::size_t>(c);
    if (is_constant(m)) {
      max_const[i] = std::max(max_const[i], k);
    } else {
      min_other[i] = std::min(min_other[i], k);
    }
  });
  ConstantMacroThreshold out;
  out.max_constant = *std::max_element(max_const.begin(), max_const.end());
  out.min_nonconstant = *std::min_element(min_other.begin(), min_other.end());
  if (out.max_constant < out.min_nonconstant) {
    out.limit = std::isinf(out.min_nonconstant)
                    ? out.max_constant
                    : out.max_constant + (out.min_nonconstant - out.max_constant) / 2.0;
  }
  return out;
}

StageTables::StageTables(std::size_t num_stages, std::size_t num_states)
    : num_stages_(num_stages),
      num_states_(num_states),
      values_((num_stages + 1) * num_states, 0.0),
      choices_(num_stages * num_states, 0),
      penalties_(num_stages, 0.0) {}

StageTables solve_stages(const TimedDfa& dfa, const StageConfig& cfg, AdmissibleSet candidates) {
  StageTables out = make_tables(dfa, cfg, candidates);
  out.candidates_ = std::move(candidates.stages);
  const std::size_t S = dfa.num_states();
  for (std::size_t k = cfg.num_stages; k-- > 0;) {
    out.penalties_[k] = cfg.mode == StageMode::Soft ? cfg.betas[k] : 0.0;
    const std::span<const double> next = out.value_slice(k + 1);
    const MacroSet& set = *out.candidates_[k];
    const std::size_t t0 = k * cfg.stage_length;
    const double penalty = out.penalties_[k];
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(S); ++s) {
      auto [value, arg] = best_macro(dfa, t0, static_cast<StateId>(s), set, penalty, next);
      out.values_[k * S + static_cast<std::size_t>(s)] = value;
      out.choices_[k * S + static_cast<std::size_t>(s)] = arg;
    }
  }
  return out;
}

StageTables solve_stages_serial(const TimedDfa& dfa, const StageConfig& cfg,
                                AdmissibleSet candidates) {
  StageTables out = make_tables(dfa, cfg, candidates);
  out.candidates_ = std::move(candidates.stages);
  const std::size_t S = dfa.num_states();
  for (std::size_t k = cfg.num_stages; k-- > 0;) {
    out.penalties_[k] = cfg.mode == StageMode::Soft ? cfg.betas[k] : 0.0;
    const std::span<const double> next = out.value_slice(k + 1);
    for (StateId s = 0; s < S; ++s) {
      auto [value, arg] = best_macro(dfa, k * cfg.stage_length, s, *out.candidates_[k],
                                     out.penalties_[k], next);
      out.values_[k * S + s] = value;
      out.choices_[k * S + s] = arg;
    }
  }
  return out;
}

StageTables scap_solve(const TimedDfa& dfa, const StageConfig& cfg,
                       const ComplexityEstimator& est, const EnumerationLimits& limits) {
  return solve_stages(dfa, cfg, build_candidates(dfa, cfg, est, limits));
}

ActionSequence extract_actions(const TimedDfa& dfa, const StageConfig& cfg,
                               const StageTables& tables, StateId s0) {
  cfg.validate(dfa);
  dfa.check_state(s0);
  if (tables.num_stages() != cfg.num_stages || tables.num_states() != dfa.num_states()) {
    throw ValidationError("stage tables do not match this automaton and configuration");
  }
  ActionSequence out;
  out.reserve(dfa.num_steps());
  StateId s = s0;
  for (std::size_t k = 0; k < cfg.num_stages; ++k) {
    const MacroSet& set = tables.candidates(k);
    const auto [value, arg] = best_macro(dfa, k * cfg.stage_length, s, set, tables.penalty(k),
                                         tables.value_slice(k + 1));
    const SymbolView macro = set.actions(arg);
    out.insert(out.end(), macro.begin(), macro.end());
    s = macro_step(dfa, k, s, macro).next;
  }
  return out;
}

double staged_objective(const TimedDfa& dfa, const StageConfig& cfg, StateId s0,
                        SymbolView seq, const ComplexityEstimator& est) {
  cfg.validate(dfa);
  if (seq.size() != dfa.num_steps()) {
    throw LengthError("staged objective needs " + std::to_string(dfa.num_steps()) + " actions");
  }
  const std::size_t l = cfg.stage_length;
  std::vector<StateId> starts(cfg.num_stages);
  std::vector<double> rewards(cfg.num_stages);
  StateId s = s0;
  for (std::size_t k = 0; k < cfg.num_stages; ++k) {
    starts[k] = s;
    auto r = macro_step(dfa, k, s, seq.subspan(k * l, l));
    rewards[k] = r.reward;
    s = r.next;
  }
  double acc = 0.0;
  for (std::size_t k = cfg.num_stages; k-- > 0;) {
    const double penalty = cfg.mode == StageMode::Soft ? cfg.betas[k] : 0.0;
    acc = (rewards[k] - penalty * est.estimate(seq.subspan(k * l, l))) + acc;
  }
  return acc;
}

}  // namespace kplan
