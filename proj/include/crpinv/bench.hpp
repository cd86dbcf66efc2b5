#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crpinv/matrix.hpp"

namespace crpinv
{

enum class SingularValueProfile
{
    Geometric
};

/// Square randsvd-style test matrix: U diag(sigma) V^T with random orthogonal
/// U, V and sigma_1 = 1 >= ... >= sigma_n = 1 / condition.
struct RandSvdSpec
{
    std::size_t n = 0;
    double condition = 1.0;
    SingularValueProfile mode = SingularValueProfile::Geometric;
    std::uint64_t seed = 0;
};

/// Prescribed singular values, largest first.
std::vector<double> randsvd_singular_values(const RandSvdSpec& spec);

/// Requires n >= 2 and condition >= 1 (std::invalid_argument otherwise).
FloatMatrix gen_randsvd(const RandSvdSpec& spec);

enum class BenchMethod
{
    Direct,
    Rpinv,
    Rsvd
};

std::string_view to_string(BenchMethod m);
BenchMethod parse_bench_method(std::string_view name);

struct BenchConfig
{
    std::vector<std::size_t> sizes{100, 200, 400};
    double alpha = 0.4;
    double condition = 1e8;
    std::size_t trials = 5;
    std::uint64_t seed = 42;
    std::vector<BenchMethod> methods{BenchMethod::Rpinv, BenchMethod::Rsvd, BenchMethod::Direct};

    /// Throws std::invalid_argument unless 0 < alpha <= 1, trials >= 1,
    /// every size >= 2, condition >= 1 and methods is nonempty.
    void validate() const;
};

/// One timed method call. relative_error is ||G - A^+||_F / ||A^+||_F against
/// the SVD pseudoinverse; failed cells carry NaN error.
struct BenchRecord
{
    std::string method;
    std::size_t n = 0;
    double alpha = 0.0;
    std::size_t trial = 0;
    double wall_time_seconds = 0.0;
    double relative_error = 0.0;
    std::optional<bool> rank_preserving; ///< empty for methods without sketches
    bool failed = false;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// p = q = ceil(alpha * n), at least 1 and at most n.
std::size_t sketch_size(double alpha, std::size_t n);

/// Flop proxies: rpinv forms P^T A and A Q (p m n + q m n) and pseudoinverts
/// a p x n and an m x q matrix (min(p, n) p n + min(m, q) m q); the direct
/// path costs min(m, n) m n.
double rpinv_cost(std::size_t m, std::size_t n, std::size_t p, std::size_t q);
double direct_cost(std::size_t m, std::size_t n);

/// Runs every (n, trial, method) cell. Records are sorted by (method, n, trial).
std::vector<BenchRecord> run_bench(const BenchConfig& config);

struct BenchSummary
{
    std::string method;
    std::size_t n = 0;
    double alpha = 0.0;
    double median_wall_time_seconds = 0.0;
    double median_relative_error = 0.0;
    std::size_t trials = 0; ///< successful trials
};

/// Per-(method, n) medians over successful trials.
std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records);

inline constexpr std::string_view bench_csv_header =
    "method,n,alpha,trial,wall_time_seconds,relative_error,rank_preserving";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);

/// Header plus one line per record; floats use shortest round-trip text.
/// I/O failures throw std::runtime_error naming the path.
void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);
std::vector<BenchRecord> parse_csv(const std::filesystem::path& path);

void emit_plot_data(const std::vector<BenchSummary>& summary, const std::filesystem::path& path);

} // namespace crpinv
