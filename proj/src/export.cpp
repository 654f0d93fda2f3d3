#include "kplan/export.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "kplan/errors.hpp"

namespace kplan {

namespace {

// Gridworld encoding is (x-1)*n + (y-1).
double at(std::size_t n, std::span<const double> values, std::size_t x, std::size_t y) {
  return values[(x - 1) * n + (y - 1)];
}

void check_grid(std::size_t n, std::span<const double> values) {
  if (values.size() != n * n) {
    throw ContractViolation("grid export needs " + std::to_string(n * n) + " values, got " +
                            std::to_string(values.size()));
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string grid_csv(std::size_t n, std::span<const double> values) {
  check_grid(n, values);
  std::string out = "y";
  for (std::size_t x = 1; x <= n; ++x) out += "," + std::to_string(x);
  out += '\n';
  for (std::size_t y = 1; y <= n; ++y) {
    out += std::to_string(y);
    for (std::size_t x = 1; x <= n; ++x) {
      out += ',';
      out += format_number(at(n, values, x, y));
    }
    out += '\n';
  }
  return out;
}

std::string grid_pgm(std::size_t n, std::span<const double> values) {
  check_grid(n, values);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  for (std::size_t y = 1; y <= n; ++y) {
    for (std::size_t x = 1; x <= n; ++x) {
      double scaled = span > 0.0 ? (at(n, values, x, y) - lo) / span * 255.0 : 0.0;
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(scaled))));
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace kplan
