#include <cmath>

#include "kplan/complexity.hpp"

namespace kplan {

// Kaspar-Schuster scan: `l` is the start of the phrase being built, `i` the
// candidate source position, `k` the current match length + 1 and `kmax` the
// longest match found from any source so far.
std::size_t lz76_phrase_count(SymbolView seq) {
  const std::size_t n = seq.size();
  if (n <= 1) return n;

  std::size_t c = 1;
  std::size_t l = 1;
  std::size_t i = 0;
  std::size_t k = 1;
  std::size_t kmax = 1;
  while (true) {
    if (seq[i + k - 1] == seq[l + k - 1]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      if (k > kmax) kmax = k;
      ++i;
      if (i == l) {
        ++c;
        l += kmax;
        if (l + 1 > n) break;
        i = 0;
        k = 1;
        kmax = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

double lz76_bits(SymbolView seq) {
  if (seq.empty()) return 0.0;
  return static_cast<double>(lz76_phrase_count(seq)) *
         std::log2(static_cast<double>(seq.size()) + 1.0);
}

}  // namespace kplan
