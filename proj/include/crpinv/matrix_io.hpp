#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "crpinv/matrix.hpp"

namespace crpinv
{

enum class MatrixMarketLayout
{
    Array,
    Coordinate
};

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// Reads `matrix array|coordinate real|integer|pattern general|symmetric|skew-symmetric`.
FloatMatrix read_matrix_market(std::istream& in);
void write_matrix_market(std::ostream& out, const FloatMatrix& a, MatrixMarketLayout layout = MatrixMarketLayout::Array);

/// Exact text format: "m n" on the first line, then m lines of n entries,
/// each "p/q" or an integer.
RationalMatrix read_rational_text(std::istream& in);
void write_rational_text(std::ostream& out, const RationalMatrix& a);

/// Detects the format from the first line: a %%MatrixMarket banner or the
/// rational text format. Entries are converted exactly into the target domain
/// (floats become dyadic rationals; rationals are rounded to nearest double).
FloatMatrix load_float_matrix(const std::filesystem::path& path);
RationalMatrix load_rational_matrix(const std::filesystem::path& path);

void save_matrix(const std::filesystem::path& path, const FloatMatrix& a,
                 MatrixMarketLayout layout = MatrixMarketLayout::Array);
void save_matrix(const std::filesystem::path& path, const RationalMatrix& a);

} // namespace crpinv
