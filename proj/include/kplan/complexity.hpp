#pragma once

// Estimators standing in for Kolmogorov complexity of finite symbol strings.
//
// Every estimator reports bits, is deterministic, returns 0 for the empty
// string and is safe to call concurrently.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "kplan/automaton.hpp"
#include "kplan/sequence.hpp"

namespace kplan {

class ComplexityEstimator {
 public:
  virtual ~ComplexityEstimator() = default;

  virtual double estimate(SymbolView seq) const = 0;
  virtual std::string name() const = 0;
};

/// Number of phrases in the Lempel-Ziv (1976) exhaustive-history parse.
/// Each phrase is the longest prefix of the remaining input that already
/// occurs starting earlier (overlap allowed), plus one new symbol; the last
/// phrase may lack the new symbol. 0 for the empty string.
std::size_t lz76_phrase_count(SymbolView seq);

/// c(x) * log2(|x| + 1).
double lz76_bits(SymbolView seq);

class Lz76Estimator final : public ComplexityEstimator {
 public:
  double estimate(SymbolView seq) const override { return lz76_bits(seq); }
  std::string name() const override { return "lz76"; }
};

/// What a CTM table answers for strings it has no entry for.
enum class TableFallback { None, Lz76 };

/// Block complexities k(x) for strings of length 1..block_length over
/// {0..alphabet_size-1}. Keys are digit strings.
class CtmTable {
 public:
  CtmTable(std::size_t alphabet_size, std::size_t block_length,
           std::unordered_map<std::string, double> entries,
           TableFallback fallback = TableFallback::None);

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t block_length() const noexcept { return block_length_; }
  TableFallback fallback() const noexcept { return fallback_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_map<std::string, double>& entries() const noexcept { return entries_; }

  std::optional<double> find(std::string_view digits) const;

  /// True when every string of length block_length has an entry.
  bool covers_full_blocks() const;

 private:
  std::size_t alphabet_size_;
  std::size_t block_length_;
  std::unordered_map<std::string, double> entries_;
  TableFallback fallback_;
};

/// JSON {alphabet_size, block_length, entries: {digits: k}, [fallback: "lz76"|"none"]}.
/// Throws ParseError (malformed/empty) or ValidationError (negative value,
/// alphabet mismatch, bad key length).
CtmTable parse_ctm_table(std::string_view text);
CtmTable load_ctm_table(const std::filesystem::path& path);
std::string ctm_table_to_json(const CtmTable& table);
void save_ctm_table(const CtmTable& table, const std::filesystem::path& path);

/// Stand-in table with k(x) := lz76_bits(x) for every string of length
/// 1..min(block_length, enumerate_up_to); longer strings resolve through the
/// Lz76 fallback. Lets the BDM path run without third-party CTM data.
CtmTable synthetic_ctm_table(std::size_t alphabet_size, std::size_t block_length,
                             std::size_t enumerate_up_to = 4);

inline constexpr std::size_t kDefaultBdmBlockLength = 12;

enum class RemainderMode {
  TableLookup,  // shorter-length table entry if present, else LZ76 bits
  Lz76,         // always LZ76 bits
};

/// Block decomposition: split x into length-l blocks plus at most one shorter
/// remainder; sum k(block) + log2(multiplicity) over distinct blocks, then add
/// the remainder scored as a single block of multiplicity 1.
class BdmEstimator final : public ComplexityEstimator {
 public:
  explicit BdmEstimator(std::shared_ptr<const CtmTable> table,
                        RemainderMode remainder = RemainderMode::TableLookup);

  /// Throws ContractViolation on symbols outside the table alphabet and
  /// MissingEntry on a full block the table cannot score.
  double estimate(SymbolView seq) const override;
  std::string name() const override;

  std::size_t block_length() const noexcept { return table_->block_length(); }
  const CtmTable& table() const noexcept { return *table_; }
  RemainderMode remainder_mode() const noexcept { return remainder_; }

 private:
  double block_value(const std::string& digits) const;
  double remainder_value(const std::string& digits) const;

  std::shared_ptr<const CtmTable> table_;
  RemainderMode remainder_;
};

/// Memoizes another estimator. Thread-safe; returns exactly what the wrapped
/// estimator returns.
class CachedEstimator final : public ComplexityEstimator {
 public:
  explicit CachedEstimator(std::shared_ptr<const ComplexityEstimator> inner);

  double estimate(SymbolView seq) const override;
  std::string name() const override { return inner_->name(); }

  std::size_t cache_size() const;

 private:
  std::shared_ptr<const ComplexityEstimator> inner_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::u16string, double> cache_;
};

/// C(s0, pi) = estimate(E(s0, pi)).
double execution_complexity(const TimedDfa& dfa, StateId s0, const Policy& pi,
                            const ComplexityEstimator& est);

}  // namespace kplan
