#include "crpinv/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace crpinv
{
namespace
{

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_double(std::string_view token)
{
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError("invalid floating-point entry '" + std::string(token) + "'");
    return value;
}

std::size_t parse_count(const std::string& token, const char* what)
{
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(std::string("invalid ") + what + " '" + token + "'");
    return value;
}

// Next line that is neither blank nor a '%' comment.
bool next_data_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '%')
            continue;
        return true;
    }
    return false;
}

std::vector<std::string> split(const std::string& line)
{
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok)
        tokens.push_back(tok);
    return tokens;
}

// Reads exactly `count` whitespace-separated tokens following the header.
std::vector<std::string> read_tokens(std::istream& in, std::size_t count)
{
    std::vector<std::string> tokens;
    tokens.reserve(count);
    std::string line;
    while (tokens.size() < count && next_data_line(in, line))
        for (auto& t : split(line))
            tokens.push_back(std::move(t));
    if (tokens.size() != count)
        throw ParseError("expected " + std::to_string(count) + " entries, found " + std::to_string(tokens.size()));
    return tokens;
}

std::ifstream open_for_read(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return in;
}

bool looks_like_matrix_market(std::istream& in)
{
    const auto pos = in.tellg();
    std::string first;
    std::getline(in, first);
    in.clear();
    in.seekg(pos);
    return first.rfind("%%MatrixMarket", 0) == 0;
}

} // namespace

std::string format_double(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

FloatMatrix read_matrix_market(std::istream& in)
{
    std::string banner;
    if (!std::getline(in, banner))
        throw ParseError("empty Matrix Market stream");
    const auto header = split(lower(banner));
    if (header.size() != 5 || header[0] != "%%matrixmarket" || header[1] != "matrix")
        throw ParseError("bad Matrix Market banner: '" + banner + "'");
    const std::string& layout = header[2];
    const std::string& field = header[3];
    const std::string& symmetry = header[4];
    if (layout != "array" && layout != "coordinate")
        throw ParseError("unsupported Matrix Market layout '" + layout + "'");
    if (field != "real" && field != "integer" && field != "double" && !(field == "pattern" && layout == "coordinate"))
        throw ParseError("unsupported Matrix Market field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
        throw ParseError("unsupported Matrix Market symmetry '" + symmetry + "'");

    std::string line;
    if (!next_data_line(in, line))
        throw ParseError("missing Matrix Market size line");
    const auto size = split(line);
    const bool coordinate = layout == "coordinate";
    if (size.size() != (coordinate ? 3u : 2u))
        throw ParseError("bad Matrix Market size line: '" + line + "'");
    const std::size_t m = parse_count(size[0], "row count");
    const std::size_t n = parse_count(size[1], "column count");
    if (symmetry != "general" && m != n)
        throw ParseError("symmetric Matrix Market matrix must be square");

    FloatMatrix a(m, n);
    const double mirror = symmetry == "skew-symmetric" ? -1.0 : 1.0;
    if (coordinate) {
        const std::size_t nnz = parse_count(size[2], "entry count");
        const std::size_t per_entry = field == "pattern" ? 2 : 3;
        const auto tokens = read_tokens(in, nnz * per_entry);
        for (std::size_t e = 0; e < nnz; ++e) {
            const std::size_t i = parse_count(tokens[e * per_entry], "row index");
            const std::size_t j = parse_count(tokens[e * per_entry + 1], "column index");
            if (i < 1 || i > m || j < 1 || j > n)
                throw ParseError("coordinate entry (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
            const double value = per_entry == 3 ? parse_double(tokens[e * per_entry + 2]) : 1.0;
            a(i - 1, j - 1) = value;
            if (symmetry != "general" && i != j)
                a(j - 1, i - 1) = mirror * value;
        }
    } else {
        // Column-major; symmetric storage lists only the lower triangle.
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = (symmetry == "general" ? 0 : j + (symmetry == "skew-symmetric")); i < m; ++i)
                slots.emplace_back(i, j);
        const auto tokens = read_tokens(in, slots.size());
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const auto [i, j] = slots[k];
            const double value = parse_double(tokens[k]);
            a(i, j) = value;
            if (symmetry != "general" && i != j)
                a(j, i) = mirror * value;
        }
    }
    return a;
}

void write_matrix_market(std::ostream& out, const FloatMatrix& a, MatrixMarketLayout layout)
{
    if (layout == MatrixMarketLayout::Array) {
        out << "%%MatrixMarket matrix array real general\n" << a.rows() << ' ' << a.cols() << '\n';
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t i = 0; i < a.rows(); ++i)
                out << format_double(a(i, j)) << '\n';
        return;
    }
    // -0.0 is kept so the round trip is bit-exact.
    auto stored = [](double x) { return x != 0.0 || std::signbit(x); };
    const auto nnz = std::count_if(a.data().begin(), a.data().end(), stored);
    out << "%%MatrixMarket matrix coordinate real general\n" << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (stored(a(i, j)))
                out << i + 1 << ' ' << j + 1 << ' ' << format_double(a(i, j)) << '\n';
}

RationalMatrix read_rational_text(std::istream& in)
{
    std::string line;
    if (!next_data_line(in, line))
        throw ParseError("missing size line in rational matrix");
    const auto size = split(line);
    if (size.size() != 2)
        throw ParseError("rational matrix size line must be 'm n', got '" + line + "'");
    const std::size_t m = parse_count(size[0], "row count");
    const std::size_t n = parse_count(size[1], "column count");

    RationalMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (n == 0)
            break;
        if (!next_data_line(in, line))
            throw ParseError("rational matrix ends after " + std::to_string(i) + " of " + std::to_string(m) + " rows");
        const auto tokens = split(line);
        if (tokens.size() != n)
            throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(tokens.size()) +
                             " entries, expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = parse_rational(tokens[j]);
    }
    if (next_data_line(in, line))
        throw ParseError("trailing data after " + std::to_string(m) + " rows: '" + line + "'");
    return a;
}

void write_rational_text(std::ostream& out, const RationalMatrix& a)
{
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a.cols() == 0)
            continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            out << (j ? " " : "") << to_string(a(i, j));
        out << '\n';
    }
}

FloatMatrix load_float_matrix(const std::filesystem::path& path)
{
    auto in = open_for_read(path);
    try {
        if (looks_like_matrix_market(in))
            return read_matrix_market(in);
        return to_float(read_rational_text(in));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

RationalMatrix load_rational_matrix(const std::filesystem::path& path)
{
    auto in = open_for_read(path);
    try {
        if (looks_like_matrix_market(in)) {
            const auto a = read_matrix_market(in);
            for (double x : a.data())
                if (!std::isfinite(x))
                    throw ParseError("non-finite entry cannot be read as a rational");
            return to_rational(a);
        }
        return read_rational_text(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_matrix(const std::filesystem::path& path, const FloatMatrix& a, MatrixMarketLayout layout)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_matrix_market(out, a, layout);
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

void save_matrix(const std::filesystem::path& path, const RationalMatrix& a)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_rational_text(out, a);
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace crpinv
