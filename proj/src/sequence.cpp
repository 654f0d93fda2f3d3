#include "kplan/sequence.hpp"

#include <limits>

#include "kplan/errors.hpp"

namespace kplan {

std::string to_digits(SymbolView seq) {
  std::string out;
  out.reserve(seq.size());
  for (ActionId a : seq) {
    if (a >= 10) {
      throw ContractViolation("symbol " + std::to_string(a) + " has no digit encoding");
    }
    out.push_back(static_cast<char>('0' + a));
  }
  return out;
}

ActionSequence from_digits(std::string_view digits, std::size_t alphabet_size) {
  ActionSequence out;
  out.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw ParseError(std::string("'") + c + "' is not a digit symbol");
    }
    auto a = static_cast<ActionId>(c - '0');
    if (a >= alphabet_size) {
      throw ParseError(std::string("symbol '") + c + "' outside alphabet of size " +
                       std::to_string(alphabet_size));
    }
    out.push_back(a);
  }
  return out;
}

void sequence_from_index(std::uint64_t index, std::size_t alphabet_size,
                         std::span<ActionId> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<ActionId>(index % alphabet_size);
    index /= alphabet_size;
  }
}

std::uint64_t count_sequences(std::size_t alphabet_size, std::size_t length) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (alphabet_size != 0 && n > kMax / alphabet_size) return kMax;
    n *= alphabet_size;
  }
  return n;
}

}  // namespace kplan
