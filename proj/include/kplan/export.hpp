#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace kplan {

/// Shortest decimal text that parses back to exactly `value`. "inf"/"-inf"/"nan"
/// for non-finite values.
std::string format_number(double value);

/// Square n x n grid, row-major over y (rows) then x (columns), header
/// "y,1,2,...,n". `values` is indexed by the gridworld state encoding.
std::string grid_csv(std::size_t n, std::span<const double> values);

/// Binary 8-bit PGM (P5) of the same grid, min-max normalised to 0..255
/// (all zeros when the grid is flat). Row 0 is y = 1.
std::string grid_pgm(std::size_t n, std::span<const double> values);

/// Writes bytes as-is (LF line endings preserved).
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace kplan
