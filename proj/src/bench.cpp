#include "crpinv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "crpinv/matrix_io.hpp"
#include "crpinv/qr.hpp"
#include "crpinv/random.hpp"
#include "crpinv/sketch.hpp"
#include "crpinv/svd.hpp"

namespace crpinv
{
namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    // steady_clock ticks are nanoseconds; a zero reading only means "below resolution".
    return std::max(s, 1e-9);
}

double median(std::vector<double> v)
{
    if (v.empty())
        return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_number(const std::string& s, const char* what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + s + "'");
    }
}

std::uint64_t method_key(BenchMethod m) { return static_cast<std::uint64_t>(m) + 1; }

} // namespace

std::vector<double> randsvd_singular_values(const RandSvdSpec& spec)
{
    std::vector<double> sigma(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double t = spec.n > 1 ? static_cast<double>(i) / static_cast<double>(spec.n - 1) : 0.0;
        sigma[i] = std::pow(spec.condition, -t);
    }
    return sigma;
}

FloatMatrix gen_randsvd(const RandSvdSpec& spec)
{
    if (spec.n < 2)
        throw std::invalid_argument("gen_randsvd: n must be at least 2");
    if (!(spec.condition >= 1.0) || !std::isfinite(spec.condition))
        throw std::invalid_argument("gen_randsvd: condition number must be finite and >= 1");

    const std::size_t n = spec.n;
    Rng rng(spec.seed);
    const FloatMatrix u = householder_qr(gaussian_matrix(n, n, rng)).q;
    const FloatMatrix v = householder_qr(gaussian_matrix(n, n, rng)).q;
    const auto sigma = randsvd_singular_values(spec);

    FloatMatrix us = u;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            us(i, j) *= sigma[j];
    return us * v.transpose();
}

std::string_view to_string(BenchMethod m)
{
    switch (m) {
    case BenchMethod::Direct:
        return "direct";
    case BenchMethod::Rpinv:
        return "rpinv";
    case BenchMethod::Rsvd:
        return "rsvd";
    }
    return "unknown";
}

BenchMethod parse_bench_method(std::string_view name)
{
    for (auto m : {BenchMethod::Direct, BenchMethod::Rpinv, BenchMethod::Rsvd})
        if (name == to_string(m))
            return m;
    throw std::invalid_argument("unknown bench method '" + std::string(name) + "' (expected rpinv, rsvd or direct)");
}

void BenchConfig::validate() const
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must satisfy 0 < alpha <= 1");
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (sizes.empty())
        throw std::invalid_argument("at least one size is required");
    for (auto n : sizes)
        if (n < 2)
            throw std::invalid_argument("every size must be at least 2");
    if (!(condition >= 1.0) || !std::isfinite(condition))
        throw std::invalid_argument("condition number must be finite and >= 1");
    if (methods.empty())
        throw std::invalid_argument("at least one method is required");
}

std::size_t sketch_size(double alpha, std::size_t n)
{
    // The slack absorbs representation error, e.g. 0.1 * 300 = 30.000000000000004.
    const double raw = std::ceil(alpha * static_cast<double>(n) - 1e-9);
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, n);
}

double rpinv_cost(std::size_t m, std::size_t n, std::size_t p, std::size_t q)
{
    const double dm = static_cast<double>(m), dn = static_cast<double>(n);
    const double dp = static_cast<double>(p), dq = static_cast<double>(q);
    return dp * dm * dn + dq * dm * dn + std::min(dp, dn) * dp * dn + std::min(dm, dq) * dm * dq;
}

double direct_cost(std::size_t m, std::size_t n)
{
    const double dm = static_cast<double>(m), dn = static_cast<double>(n);
    return std::min(dm, dn) * dm * dn;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config)
{
    config.validate();
    auto wants = [&](BenchMethod m) {
        return std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end();
    };

    std::vector<BenchRecord> records;
    for (const std::size_t n : config.sizes) {
        const std::size_t sketch = sketch_size(config.alpha, n);
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            const auto cell_seed = [&](std::uint64_t key) { return derive_seed(config.seed, {n, trial, key}); };
            auto base = [&](BenchMethod m) {
                BenchRecord r;
                r.method = std::string(to_string(m));
                r.n = n;
                r.alpha = config.alpha;
                r.trial = trial;
                return r;
            };
            auto failure = [&](BenchMethod m, double elapsed, const std::exception& e) {
                BenchRecord r = base(m);
                r.wall_time_seconds = elapsed;
                r.relative_error = std::numeric_limits<double>::quiet_NaN();
                r.failed = true;
                std::cerr << "bench: " << r.method << " n=" << n << " trial=" << trial << " failed: " << e.what()
                          << '\n';
                return r;
            };

            FloatMatrix a;
            FloatMatrix reference;
            std::size_t rank_a = 0;
            auto start = Clock::now();
            try {
                a = gen_randsvd({n, config.condition, SingularValueProfile::Geometric, cell_seed(0)});
                start = Clock::now();
                const auto s = svd(a);
                reference = pinv_from_svd(s);
                const double elapsed = seconds_since(start);
                rank_a = s.numerical_rank;
                if (wants(BenchMethod::Direct)) {
                    BenchRecord r = base(BenchMethod::Direct);
                    r.wall_time_seconds = elapsed;
                    r.relative_error = 0.0;
                    records.push_back(r);
                }
            } catch (const std::exception& e) {
                // Without a reference no other method can be scored.
                for (auto m : config.methods)
                    records.push_back(failure(m, seconds_since(start), e));
                continue;
            }

            if (wants(BenchMethod::Rpinv)) {
                start = Clock::now();
                try {
                    const auto res = rpinv(a, sketch, sketch, cell_seed(method_key(BenchMethod::Rpinv)), rank_a);
                    BenchRecord r = base(BenchMethod::Rpinv);
                    r.wall_time_seconds = seconds_since(start);
                    r.relative_error = relative_error(res.approx, reference);
                    r.rank_preserving = res.rank_preserving;
                    records.push_back(r);
                } catch (const std::exception& e) {
                    records.push_back(failure(BenchMethod::Rpinv, seconds_since(start), e));
                }
            }

            if (wants(BenchMethod::Rsvd)) {
                start = Clock::now();
                try {
                    const auto g = rsvd_pinv(a, std::max<std::size_t>(rank_a, 1), cell_seed(method_key(BenchMethod::Rsvd)));
                    BenchRecord r = base(BenchMethod::Rsvd);
                    r.wall_time_seconds = seconds_since(start);
                    r.relative_error = relative_error(g, reference);
                    records.push_back(r);
                } catch (const std::exception& e) {
                    records.push_back(failure(BenchMethod::Rsvd, seconds_since(start), e));
                }
            }
        }
    }

    std::stable_sort(records.begin(), records.end(), [](const BenchRecord& x, const BenchRecord& y) {
        return std::tie(x.method, x.n, x.trial) < std::tie(y.method, y.n, y.trial);
    });
    return records;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records)
{
    std::vector<BenchSummary> out;
    for (std::size_t i = 0; i < records.size();) {
        std::size_t j = i;
        std::vector<double> times, errors;
        while (j < records.size() && records[j].method == records[i].method && records[j].n == records[i].n) {
            if (!records[j].failed) {
                times.push_back(records[j].wall_time_seconds);
                errors.push_back(records[j].relative_error);
            }
            ++j;
        }
        out.push_back({records[i].method, records[i].n, records[i].alpha, median(times), median(errors), times.size()});
        i = j;
    }
    return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records)
{
    out << bench_csv_header << '\n';
    for (const auto& r : records) {
        out << r.method << ',' << r.n << ',' << format_double(r.alpha) << ',' << r.trial << ','
            << format_double(r.wall_time_seconds) << ',' << format_double(r.relative_error) << ',';
        if (r.failed)
            out << "error";
        else if (r.rank_preserving)
            out << (*r.rank_preserving ? "true" : "false");
        else
            out << "n/a";
        out << '\n';
    }
}

std::vector<BenchRecord> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != bench_csv_header)
        throw ParseError("missing or unexpected bench CSV header");
    std::vector<BenchRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 7)
            throw ParseError("bench CSV line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                             " fields, expected 7");
        BenchRecord r;
        r.method = f[0];
        r.n = static_cast<std::size_t>(parse_number(f[1], "n"));
        r.alpha = parse_number(f[2], "alpha");
        r.trial = static_cast<std::size_t>(parse_number(f[3], "trial"));
        r.wall_time_seconds = parse_number(f[4], "wall time");
        r.relative_error = f[5] == "nan" ? std::numeric_limits<double>::quiet_NaN() : parse_number(f[5], "error");
        if (f[6] == "true")
            r.rank_preserving = true;
        else if (f[6] == "false")
            r.rank_preserving = false;
        else if (f[6] == "error")
            r.failed = true;
        else if (f[6] != "n/a")
            throw ParseError("bad rank_preserving field '" + f[6] + "'");
        out.push_back(r);
    }
    return out;
}

void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(out, records);
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<BenchRecord> parse_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return read_csv(in);
}

void emit_plot_data(const std::vector<BenchSummary>& summary, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << "method,n,alpha,median_wall_time_seconds,median_relative_error,trials\n";
    for (const auto& s : summary)
        out << s.method << ',' << s.n << ',' << format_double(s.alpha) << ',' << format_double(s.median_wall_time_seconds)
            << ',' << format_double(s.median_relative_error) << ',' << s.trials << '\n';
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace crpinv
