#pragma once

// Reference computations that share no code with the library: cofactor
// determinants, ranks from minors, and seeded random test matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "crpinv/matrix.hpp"
#include "crpinv/random.hpp"

namespace oracle
{

using crpinv::FloatMatrix;
using crpinv::Rational;
using crpinv::RationalMatrix;

/// Laplace expansion along the first row. Exponential; keep n <= 8.
inline Rational cofactor_determinant(const RationalMatrix& a)
{
    const std::size_t n = a.rows();
    if (n == 0)
        return Rational(1);
    if (n == 1)
        return a(0, 0);
    Rational det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == 0)
            continue;
        RationalMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, c++) = a(i, k);
        const Rational term = a(0, j) * cofactor_determinant(minor);
        det += (j % 2 == 0) ? term : Rational(-term);
    }
    return det;
}

/// Calls f on every k-subset of {0..n-1} until it returns true.
inline bool any_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    if (k > n)
        return false;
    while (true) {
        if (f(idx))
            return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

/// Largest k with a nonzero k x k minor.
inline std::size_t minor_rank(const RationalMatrix& a)
{
    for (std::size_t k = std::min(a.rows(), a.cols()); k > 0; --k) {
        const bool found = any_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
            return any_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
                RationalMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        sub(i, j) = a(rows[i], cols[j]);
                return cofactor_determinant(sub) != 0;
            });
        });
        if (found)
            return k;
    }
    return 0;
}

/// Inverse through the adjugate: inv(a)(i, j) = (-1)^(i+j) det(minor(j, i)) / det(a).
inline RationalMatrix adjugate_inverse(const RationalMatrix& a)
{
    const std::size_t n = a.rows();
    const Rational det = cofactor_determinant(a);
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RationalMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j)
                    continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c)
                    if (c != i)
                        minor(rr, cc++) = a(r, c);
                ++rr;
            }
            const Rational cof = cofactor_determinant(minor) / det;
            out(i, j) = ((i + j) % 2 == 0) ? cof : Rational(-cof);
        }
    return out;
}

inline RationalMatrix random_integer_matrix(std::size_t m, std::size_t n, crpinv::Rng& rng, int lo = -4, int hi = 4)
{
    RationalMatrix out(m, n);
    for (auto& x : out.data())
        x = Rational(static_cast<long>(rng.integer(lo, hi)));
    return out;
}

/// Product of m x r and r x n integer matrices; rank at most r.
inline RationalMatrix random_low_rank_integer(std::size_t m, std::size_t n, std::size_t r, crpinv::Rng& rng)
{
    return random_integer_matrix(m, r, rng, -3, 3) * random_integer_matrix(r, n, rng, -3, 3);
}

/// Product of Gaussian m x r and r x n matrices; rank r almost surely.
inline FloatMatrix random_low_rank_float(std::size_t m, std::size_t n, std::size_t r, crpinv::Rng& rng)
{
    return crpinv::gaussian_matrix(m, r, rng) * crpinv::gaussian_matrix(r, n, rng);
}

inline std::size_t uniform_size(crpinv::Rng& rng, std::size_t lo, std::size_t hi)
{
    return static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

/// ||x||_F over the double casts; enough for residual checks.
inline double norm(const FloatMatrix& x)
{
    double s = 0.0;
    for (double v : x.data())
        s += v * v;
    return std::sqrt(s);
}

} // namespace oracle
