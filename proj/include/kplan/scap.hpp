#pragma once

// Stage-complexity-aware planning: the horizon is cut into num_stages stages
// of stage_length steps and each stage's macro-action is penalised (soft) or
// capped (hard) by its own estimated complexity, which makes dynamic
// programming over stages possible.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "kplan/automaton.hpp"
#include "kplan/complexity.hpp"

namespace kplan {

enum class StageMode { Soft, Hard };
enum class AdmissibleMethod { Enumerate, Ucs };

struct StageConfig {
  std::size_t stage_length = 1;
  std::size_t num_stages = 1;  // K + 1
  StageMode mode = StageMode::Hard;
  std::vector<double> betas;   // soft: one weight per stage
  std::vector<double> limits;  // hard: one cap per stage, +inf allowed
  std::vector<double> deltas;  // hard + Ucs: search margins; empty means all 0
  AdmissibleMethod admissible_method = AdmissibleMethod::Enumerate;

  static StageConfig soft(std::size_t stage_length, std::size_t num_stages,
                          std::vector<double> betas);
  static StageConfig hard(std::size_t stage_length, std::size_t num_stages,
                          std::vector<double> limits,
                          AdmissibleMethod method = AdmissibleMethod::Enumerate,
                          std::vector<double> deltas = {});

  /// Throws ValidationError unless stage_length * num_stages == T + 1 and the
  /// per-stage lists match the mode.
  void validate(const TimedDfa& dfa) const;

  double delta(std::size_t k) const { return deltas.empty() ? 0.0 : deltas[k]; }
};

/// Macro-actions of one length with their estimated complexities, kept in
/// lexicographic order of the action indices.
class MacroSet {
 public:
  explicit MacroSet(std::size_t length) : length_(length) {}

  std::size_t size() const noexcept { return complexities_.size(); }
  bool empty() const noexcept { return complexities_.empty(); }
  std::size_t length() const noexcept { return length_; }

  SymbolView actions(std::size_t i) const { return {flat_.data() + i * length_, length_}; }
  double complexity(std::size_t i) const { return complexities_[i]; }

  void push_back(SymbolView actions, double complexity);
  std::vector<ActionSequence> sequences() const;

  friend bool operator==(const MacroSet&, const MacroSet&) = default;

 private:
  std::size_t length_;
  std::vector<ActionId> flat_;
  std::vector<double> complexities_;
};

/// Size guard for |A|^l enumerations: log a warning above warn_above and
/// throw CapExceeded above reject_above.
struct EnumerationLimits {
  std::uint64_t warn_above = 10'000'000;
  std::uint64_t reject_above = 100'000'000;
};

/// f^l_k(s, macro) and r^l_k(s, macro): macro applied at times k*l .. k*l+l-1
/// with l = macro.size(). Rewards accumulate in increasing t.
StepResult macro_step(const TimedDfa& dfa, std::size_t k, StateId s, SymbolView macro);

/// Every macro in A^l scored by `est`. OpenMP over macro indices.
MacroSet enumerate_macros(std::size_t alphabet_size, std::size_t length,
                          const ComplexityEstimator& est, const EnumerationLimits& limits = {});
MacroSet enumerate_macros_serial(std::size_t alphabet_size, std::size_t length,
                                 const ComplexityEstimator& est,
                                 const EnumerationLimits& limits = {});

/// Per-stage candidate macro-actions. Stages with equal parameters share one set.
struct AdmissibleSet {
  std::vector<std::shared_ptr<const MacroSet>> stages;
};

/// Exact A_k = {a in A^l : est(a) <= L_k} for every stage, by full enumeration.
/// Throws InfeasibleStage (with the minimum complexity over A^l) on an empty A_k.
AdmissibleSet enumerate_admissible(const TimedDfa& dfa, const StageConfig& cfg,
                                   const ComplexityEstimator& est,
                                   const EnumerationLimits& limits = {});

struct UcsAdmissibleResult {
  MacroSet macros;
  std::size_t nodes_expanded = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t parent_child_pairs = 0;
  /// Smallest complexity among complete macros generated (+inf if none).
  double min_leaf_complexity = 0.0;
};

/// Uniform-cost search over prefixes with cost est(prefix). Complete macros
/// popped with cost <= limit are kept; the search ends once the cheapest
/// frontier node costs more than limit + delta. Always a subset of the exact
/// A_k; equal to it whenever the explored costs never decreased along an edge.
UcsAdmissibleResult ucs_admissible(std::size_t alphabet_size, std::size_t length, double limit,
                                   double delta, const ComplexityEstimator& est);
UcsAdmissibleResult ucs_admissible(std::size_t alphabet_size, const StageConfig& cfg,
                                   std::size_t k, const ComplexityEstimator& est);

/// Candidate sets for cfg: all of A^l (soft), enumerate_admissible or
/// ucs_admissible (hard). Throws InfeasibleStage on an empty stage.
AdmissibleSet build_candidates(const TimedDfa& dfa, const StageConfig& cfg,
                               const ComplexityEstimator& est,
                               const EnumerationLimits& limits = {});

struct ConstantMacroThreshold {
  double max_constant = 0.0;      // largest complexity among the |A| constant macros
  double min_nonconstant = 0.0;   // smallest complexity among the rest (+inf if none)
  /// Midpoint of the gap when max_constant < min_nonconstant.
  std::optional<double> limit;
};

/// Full-enumeration search for a limit L whose admissible set is exactly the
/// constant macros.
ConstantMacroThreshold constant_macro_threshold(std::size_t alphabet_size, std::size_t length,
                                                const ComplexityEstimator& est,
                                                const EnumerationLimits& limits = {});

class StageTables {
 public:
  StageTables(std::size_t num_stages, std::size_t num_states);

  std::size_t num_stages() const noexcept { return num_stages_; }
  std::size_t num_states() const noexcept { return num_states_; }

  /// V_k(s) for k = 0..K+1.
  double value(std::size_t k, StateId s) const { return values_[k * num_states_ + s]; }
  std::span<const double> value_slice(std::size_t k) const {
    return {values_.data() + k * num_states_, num_states_};
  }
  /// Index into candidates(k) of the argmax macro at (k, s).
  std::size_t choice(std::size_t k, StateId s) const { return choices_[k * num_states_ + s]; }
  const MacroSet& candidates(std::size_t k) const { return *candidates_[k]; }
  double penalty(std::size_t k) const { return penalties_[k]; }

  friend bool operator==(const StageTables& lhs, const StageTables& rhs) {
    return lhs.values_ == rhs.values_ && lhs.choices_ == rhs.choices_;
  }

 private:
  friend StageTables solve_stages(const TimedDfa&, const StageConfig&, AdmissibleSet);
  friend StageTables solve_stages_serial(const TimedDfa&, const StageConfig&, AdmissibleSet);

  std::size_t num_stages_;
  std::size_t num_states_;
  std::vector<double> values_;
  std::vector<std::size_t> choices_;
  std::vector<std::shared_ptr<const MacroSet>> candidates_;
  std::vector<double> penalties_;
};

/// Stage DP V_k(s) = max_m [ r^l_k(s,m) - beta_k * c(m) + V_{k+1}(f^l_k(s,m)) ]
/// over the given candidates (beta_k = 0 in hard mode), ties to the
/// lexicographically smallest macro. OpenMP over states within a stage.
StageTables solve_stages(const TimedDfa& dfa, const StageConfig& cfg, AdmissibleSet candidates);
StageTables solve_stages_serial(const TimedDfa& dfa, const StageConfig& cfg,
                                AdmissibleSet candidates);

/// build_candidates + solve_stages.
StageTables scap_solve(const TimedDfa& dfa, const StageConfig& cfg,
                       const ComplexityEstimator& est, const EnumerationLimits& limits = {});

/// Forward pass from s0 picking the argmax macro of every stage; returns the
/// concatenation a_0..a_T.
ActionSequence extract_actions(const TimedDfa& dfa, const StageConfig& cfg,
                               const StageTables& tables, StateId s0);

/// sum_k [ r^l_k - beta_k * est(a_k) ] of a full sequence, accumulated from
/// the last stage backwards exactly like the stage DP (beta = 0 in hard mode).
double staged_objective(const TimedDfa& dfa, const StageConfig& cfg, StateId s0,
                        SymbolView seq, const ComplexityEstimator& est);

}  // namespace kplan
