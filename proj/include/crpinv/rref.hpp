#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "crpinv/matrix.hpp"
#include "crpinv/svd.hpp"

namespace crpinv
{

template <Scalar T>
struct RrefResult
{
    Matrix<T> rref;
    std::vector<std::size_t> pivot_cols; ///< strictly increasing
    std::size_t rank = 0;
};

/// rref together with the accumulated row operations: transform * a == rref.
template <Scalar T>
struct RrefWithTransform
{
    RrefResult<T> result;
    Matrix<T> transform; ///< m x m, invertible
};

namespace detail
{

/// Safety factor on the float pivot threshold. On rank-deficient inputs the
/// rounding left in a dependent column regularly exceeds max(m, n) * eps times
/// its scale by one or two orders of magnitude.
#ifndef CRPINV_PIVOT_SAFETY
#define CRPINV_PIVOT_SAFETY 100.0
#endif
inline constexpr double pivot_safety = CRPINV_PIVOT_SAFETY;

/// Multiplier turning a column scale into a pivot threshold for an m x n
/// float matrix; zero for exact scalars.
template <Scalar T>
double threshold_unit(std::size_t m, std::size_t n)
{
    if constexpr (is_exact_v<T>)
        return 0.0;
    else
        return pivot_safety * static_cast<double>(std::max(m, n)) * ScalarTraits<double>::epsilon();
}

template <Scalar T>
double column_max(const Matrix<T>& w, std::size_t j)
{
    double best = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i)
        best = std::max(best, std::fabs(ScalarTraits<T>::to_double(w(i, j))));
    return best;
}

/// In-place Gauss-Jordan elimination choosing pivots only among the first
/// `pivot_cols` columns; row operations are applied across the full width.
/// Exact scalars take the first nonzero entry as pivot. Floats take the
/// largest remaining entry of the column and treat it as zero when it is at
/// most unit * max(largest entry of the current working column, floor). The
/// working column includes rows already reduced, so growth in the
/// coefficients of a dependent column raises its threshold along with its
/// rounding noise. The floor carries the scale of the operands of a product
/// that may cancel to noise.
template <Scalar T>
std::vector<std::size_t> gauss_jordan(Matrix<T>& w, std::size_t pivot_cols, double unit = 0.0, double floor = 0.0)
{
    const std::size_t m = w.rows();
    const std::size_t width = w.cols();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    T factor;
    for (std::size_t j = 0; j < pivot_cols && row < m; ++j) {
        std::size_t p = m;
        if constexpr (is_exact_v<T>) {
            for (std::size_t i = row; i < m; ++i)
                if (!ScalarTraits<T>::is_zero(w(i, j))) {
                    p = i;
                    break;
                }
        } else {
            double best = unit * std::max(column_max(w, j), floor);
            for (std::size_t i = row; i < m; ++i) {
                const double x = std::fabs(w(i, j));
                if (x > best) {
                    best = x;
                    p = i;
                }
            }
            if (p == m)
                for (std::size_t i = row; i < m; ++i)
                    w(i, j) = 0.0;
        }
        if (p == m)
            continue;

        if (p != row)
            for (std::size_t k = 0; k < width; ++k)
                std::swap(w(p, k), w(row, k));

        const T inv = T(1) / w(row, j);
        for (std::size_t k = j; k < width; ++k)
            w(row, k) *= inv;
        w(row, j) = T(1);

        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || ScalarTraits<T>::is_zero(w(i, j)))
                continue;
            factor = w(i, j);
            for (std::size_t k = j; k < width; ++k)
                w(i, k) -= factor * w(row, k);
            w(i, j) = T(0);
        }
        pivots.push_back(j);
        ++row;
    }
    return pivots;
}

/// Zeroes float entries of the first `cols` columns that fall under their
/// column's threshold.
template <Scalar T>
void flush_small(Matrix<T>& w, std::size_t cols, double unit, double floor)
{
    if constexpr (!is_exact_v<T>) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double tol = unit * std::max(column_max(w, j), floor);
            for (std::size_t i = 0; i < w.rows(); ++i)
                if (std::fabs(w(i, j)) <= tol)
                    w(i, j) = 0.0;
        }
    }
}

} // namespace detail

/// `scale_floor` only affects floats; see detail::gauss_jordan.
template <Scalar T>
RrefResult<T> rref(const Matrix<T>& a, double scale_floor = 0.0)
{
    RrefResult<T> out{a, {}, 0};
    const double unit = detail::threshold_unit<T>(a.rows(), a.cols());
    out.pivot_cols = detail::gauss_jordan(out.rref, a.cols(), unit, scale_floor);
    out.rank = out.pivot_cols.size();
    detail::flush_small(out.rref, a.cols(), unit, scale_floor);
    return out;
}

template <Scalar T>
RrefWithTransform<T> rref_with_transform(const Matrix<T>& a)
{
    const std::size_t n = a.cols();
    Matrix<T> work = hcat(a, Matrix<T>::identity(a.rows()));
    const double unit = detail::threshold_unit<T>(a.rows(), n);
    auto pivots = detail::gauss_jordan(work, n, unit);

    RrefWithTransform<T> out;
    out.result.rref = work.block(0, 0, a.rows(), n);
    detail::flush_small(out.result.rref, n, unit, 0.0);
    out.result.rank = pivots.size();
    out.result.pivot_cols = std::move(pivots);
    out.transform = work.block(0, n, a.rows(), a.rows());
    return out;
}

/// Inverse of a square matrix by Gauss-Jordan on [a | I]. Throws
/// SingularMatrixError when a pivot is missing.
template <Scalar T>
Matrix<T> inverse(const Matrix<T>& a)
{
    if (a.rows() != a.cols())
        throw ShapeError("inverse of non-square " + a.shape_string() + " matrix");
    const std::size_t n = a.rows();
    Matrix<T> work = hcat(a, Matrix<T>::identity(n));
    const auto pivots = detail::gauss_jordan(work, n, detail::threshold_unit<T>(n, n));
    if (pivots.size() != n)
        throw SingularMatrixError("matrix of size " + a.shape_string() + " is singular (rank " +
                                  std::to_string(pivots.size()) + ")");
    return work.block(0, n, n, n);
}

/// Determinant by Gaussian elimination (partial pivoting for floats).
template <Scalar T>
T determinant(const Matrix<T>& a)
{
    if (a.rows() != a.cols())
        throw ShapeError("determinant of non-square " + a.shape_string() + " matrix");
    Matrix<T> w = a;
    const std::size_t n = a.rows();
    T det = T(1);
    T factor;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = j;
        if constexpr (is_exact_v<T>) {
            while (p < n && ScalarTraits<T>::is_zero(w(p, j)))
                ++p;
        } else {
            for (std::size_t i = j + 1; i < n; ++i)
                if (std::fabs(w(i, j)) > std::fabs(w(p, j)))
                    p = i;
            if (w(p, j) == 0.0)
                p = n;
        }
        if (p == n)
            return T(0);
        if (p != j) {
            for (std::size_t k = 0; k < n; ++k)
                std::swap(w(p, k), w(j, k));
            det = -det;
        }
        det *= w(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            if (ScalarTraits<T>::is_zero(w(i, j)))
                continue;
            factor = w(i, j) / w(j, j);
            for (std::size_t k = j; k < n; ++k)
                w(i, k) -= factor * w(j, k);
        }
    }
    return det;
}

/// Exact rank over rationals (from rref); numerical rank over floats (from
/// the SVD tolerance rule).
template <Scalar T>
std::size_t rank(const Matrix<T>& a)
{
    if constexpr (is_exact_v<T>)
        return rref(a).rank;
    else
        return numerical_rank(a);
}

} // namespace crpinv
