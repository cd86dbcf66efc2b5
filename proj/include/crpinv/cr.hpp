#pragma once

#include <cstddef>
#include <vector>

#include "crpinv/matrix.hpp"
#include "crpinv/rref.hpp"

namespace crpinv
{

/// A = C * R with C the first r independent columns of A and R the nonzero
/// rows of rref(A).
template <Scalar T>
struct CrFactorization
{
    Matrix<T> c;        ///< m x r, full column rank
    Matrix<T> r_factor; ///< r x n, full row rank; identity at pivot_cols
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;

    std::size_t rows() const { return c.rows(); }
    std::size_t cols() const { return r_factor.cols(); }
};

/// Rank-0 input gives c of shape m x 0 and r_factor of shape 0 x n.
/// `scale_floor` is passed to the float rref tolerance.
template <Scalar T>
CrFactorization<T> cr_factorize(const Matrix<T>& a, double scale_floor = 0.0)
{
    auto e = rref(a, scale_floor);
    CrFactorization<T> out;
    out.c = a.select_cols(e.pivot_cols);
    out.r_factor = e.rref.block(0, 0, e.rank, a.cols());
    out.rank = e.rank;
    out.pivot_cols = std::move(e.pivot_cols);
    return out;
}

/// Blocks making [c0 c1] (m x m) and [r0; r1] (n x n) invertible, where
/// c0, r0 are the CR factors of A.
template <Scalar T>
struct GeneralizedCompletion
{
    Matrix<T> c0; ///< m x r
    Matrix<T> c1; ///< m x (m - r)
    Matrix<T> r0; ///< r x n
    Matrix<T> r1; ///< (n - r) x n
};

namespace detail
{

// Appends unit columns e_0, e_1, ... (in index order) that raise the rank of
// [base extra] until it reaches base.rows().
template <Scalar T>
Matrix<T> complete_columns(const Matrix<T>& base)
{
    const std::size_t m = base.rows();
    Matrix<T> extra(m, 0);
    std::size_t current = rref(base).rank;
    for (std::size_t i = 0; i < m && current < m; ++i) {
        Matrix<T> unit(m, 1);
        unit(i, 0) = T(1);
        Matrix<T> trial = hcat(extra, unit);
        const std::size_t r = rref(hcat(base, trial)).rank;
        if (r > current) {
            extra = std::move(trial);
            current = r;
        }
    }
    return extra;
}

} // namespace detail

template <Scalar T>
GeneralizedCompletion<T> complete_to_generalized(const Matrix<T>& a)
{
    auto f = cr_factorize(a);
    GeneralizedCompletion<T> out;
    out.c1 = detail::complete_columns(f.c);
    out.r1 = detail::complete_columns(f.r_factor.transpose()).transpose();
    out.c0 = std::move(f.c);
    out.r0 = std::move(f.r_factor);
    return out;
}

} // namespace crpinv
