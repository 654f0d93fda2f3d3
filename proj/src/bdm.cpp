#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "kplan/complexity.hpp"
#include "kplan/errors.hpp"

namespace kplan {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxTableAlphabet = 10;

std::string key_of(SymbolView block) {
  std::string key(block.size(), '0');
  for (std::size_t i = 0; i < block.size(); ++i) {
    key[i] = static_cast<char>('0' + block[i]);
  }
  return key;
}

}  // namespace

CtmTable::CtmTable(std::size_t alphabet_size, std::size_t block_length,
                   std::unordered_map<std::string, double> entries, TableFallback fallback)
    : alphabet_size_(alphabet_size),
      block_length_(block_length),
      entries_(std::move(entries)),
      fallback_(fallback) {
  if (alphabet_size_ == 0 || alphabet_size_ > kMaxTableAlphabet) {
    throw ValidationError("CTM alphabet size must be in [1, 10]");
  }
  if (block_length_ == 0) throw ValidationError("CTM block length must be positive");
  for (const auto& [key, value] : entries_) {
    if (key.empty() || key.size() > block_length_) {
      throw ValidationError("CTM key '" + key + "' must have length 1.." +
                            std::to_string(block_length_));
    }
    for (char c : key) {
      if (c < '0' || c >= static_cast<char>('0' + alphabet_size_)) {
        throw ValidationError("CTM key '" + key + "' uses a symbol outside alphabet of size " +
                              std::to_string(alphabet_size_));
      }
    }
    if (!std::isfinite(value) || value < 0.0) {
      throw ValidationError("CTM value for '" + key + "' must be a nonnegative number");
    }
  }
}

std::optional<double> CtmTable::find(std::string_view digits) const {
  auto it = entries_.find(std::string(digits));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool CtmTable::covers_full_blocks() const {
  const auto needed = count_sequences(alphabet_size_, block_length_);
  std::uint64_t have = 0;
  for (const auto& [key, value] : entries_) {
    if (key.size() == block_length_) ++have;
  }
  return have == needed;
}

CtmTable parse_ctm_table(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("CTM table: ") + e.what());
  }
  try {
    const auto alphabet = doc.at("alphabet_size").get<std::size_t>();
    const auto block_length = doc.at("block_length").get<std::size_t>();
    const auto& raw = doc.at("entries");
    if (!raw.is_object()) throw ParseError("CTM table: entries must be an object");
    std::unordered_map<std::string, double> entries;
    entries.reserve(raw.size());
    for (const auto& [key, value] : raw.items()) {
      if (!value.is_number()) throw ParseError("CTM table: value for '" + key + "' is not a number");
      entries.emplace(key, value.get<double>());
    }
    TableFallback fallback = TableFallback::None;
    if (doc.contains("fallback")) {
      const auto f = doc.at("fallback").get<std::string>();
      if (f == "lz76") {
        fallback = TableFallback::Lz76;
      } else if (f != "none") {
        throw ParseError("CTM table: unknown fallback '" + f + "'");
      }
    }
    return CtmTable(alphabet, block_length, std::move(entries), fallback);
  } catch (const json::exception& e) {
    throw ParseError(std::string("CTM table: ") + e.what());
  }
}

CtmTable load_ctm_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read CTM table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ctm_table(buf.str());
}

std::string ctm_table_to_json(const CtmTable& table) {
  std::map<std::string, double> sorted(table.entries().begin(), table.entries().end());
  json entries = json::object();
  for (const auto& [key, value] : sorted) entries[key] = value;
  json doc = {{"alphabet_size", table.alphabet_size()},
              {"block_length", table.block_length()},
              {"entries", std::move(entries)}};
  if (table.fallback() == TableFallback::Lz76) doc["fallback"] = "lz76";
  return doc.dump() + "\n";
}

void save_ctm_table(const CtmTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << ctm_table_to_json(table);
}

CtmTable synthetic_ctm_table(std::size_t alphabet_size, std::size_t block_length,
                             std::size_t enumerate_up_to) {
  std::unordered_map<std::string, double> entries;
  const std::size_t max_len = std::min(block_length, enumerate_up_to);
  ActionSequence buf;
  for (std::size_t len = 1; len <= max_len; ++len) {
    buf.assign(len, 0);
    const auto n = count_sequences(alphabet_size, len);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      sequence_from_index(idx, alphabet_size, buf);
      entries.emplace(key_of(buf), lz76_bits(buf));
    }
  }
  return CtmTable(alphabet_size, block_length, std::move(entries), TableFallback::Lz76);
}

BdmEstimator::BdmEstimator(std::shared_ptr<const CtmTable> table, RemainderMode remainder)
    : table_(std::move(table)), remainder_(remainder) {
  if (!table_) throw ValidationError("BDM estimator needs a table");
}

std::string BdmEstimator::name() const {
  return "bdm(l=" + std::to_string(table_->block_length()) + ")";
}

double BdmEstimator::estimate(SymbolView seq) const {
  const std::size_t alphabet = table_->alphabet_size();
  for (ActionId a : seq) {
    if (a >= alphabet) {
      throw ContractViolation("symbol " + std::to_string(a) + " outside table alphabet of size " +
                              std::to_string(alphabet));
    }
  }
  const std::size_t l = table_->block_length();
  const std::size_t full = seq.size() / l;

  std::vector<std::string> blocks;
  blocks.reserve(full);
  for (std::size_t b = 0; b < full; ++b) blocks.push_back(key_of(seq.subspan(b * l, l)));
  std::sort(blocks.begin(), blocks.end());

  // Distinct blocks are summed in lexicographic order, so the result depends
  // only on the block multiset.
  double total = 0.0;
  for (std::size_t i = 0; i < blocks.size();) {
    std::size_t j = i;
    while (j < blocks.size() && blocks[j] == blocks[i]) ++j;
    total += block_value(blocks[i]) + std::log2(static_cast<double>(j - i));
    i = j;
  }
  if (seq.size() % l != 0) total += remainder_value(key_of(seq.subspan(full * l)));
  return total;
}

double BdmEstimator::block_value(const std::string& digits) const {
  if (auto k = table_->find(digits)) return *k;
  if (table_->fallback() == TableFallback::Lz76) {
    return lz76_bits(from_digits(digits, table_->alphabet_size()));
  }
  throw MissingEntry("CTM table has no entry for block '" + digits + "'");
}

double BdmEstimator::remainder_value(const std::string& digits) const {
  if (remainder_ == RemainderMode::TableLookup) {
    if (auto k = table_->find(digits)) return *k;
  }
  return lz76_bits(from_digits(digits, table_->alphabet_size()));
}

}  // namespace kplan
