#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kplan {

using StateId = std::uint32_t;
using ActionId = std::uint16_t;

/// Actions a_0..a_T. Also used for arbitrary symbol strings fed to estimators.
using ActionSequence = std::vector<ActionId>;
using SymbolView = std::span<const ActionId>;

/// Digit-string form used by CSV output and table keys: action i -> char '0'+i.
/// Requires every symbol < 10.
std::string to_digits(SymbolView seq);

/// Inverse of to_digits. Throws ParseError on a non-digit or a symbol >= alphabet_size.
ActionSequence from_digits(std::string_view digits, std::size_t alphabet_size);

/// Writes the index-th sequence of length `out.size()` in lexicographic order
/// (first symbol most significant).
void sequence_from_index(std::uint64_t index, std::size_t alphabet_size,
                         std::span<ActionId> out);

/// alphabet_size^length, or UINT64_MAX on overflow.
std::uint64_t count_sequences(std::size_t alphabet_size, std::size_t length);

}  // namespace kplan
