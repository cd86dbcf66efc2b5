#pragma once

#include <cstddef>
#include <string_view>

#include "crpinv/matrix.hpp"
#include "crpinv/rref.hpp"

namespace crpinv
{

enum class SubspaceKind
{
    ColumnSpace,  ///< C(A), in R^m
    RowSpace,     ///< C(A^T), in R^n
    Nullspace,    ///< N(A), in R^n
    LeftNullspace ///< N(A^T), in R^m
};

std::string_view to_string(SubspaceKind kind);

template <Scalar T>
struct SubspaceBasis
{
    SubspaceKind kind;
    Matrix<T> basis; ///< columns are independent and span the subspace
    std::size_t ambient_dim = 0;

    std::size_t dim() const { return basis.cols(); }
};

namespace detail
{

/// Special solutions of R x = 0 read off a reduced row echelon form: one per
/// free column f, with x_f = 1 and x_{pivot_i} = -rref(i, f).
template <Scalar T>
Matrix<T> special_solutions(const RrefResult<T>& e)
{
    const std::size_t n = e.rref.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivot_cols)
        is_pivot[p] = true;

    Matrix<T> out(n, n - e.rank);
    std::size_t k = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        out(f, k) = T(1);
        for (std::size_t i = 0; i < e.rank; ++i)
            out(e.pivot_cols[i], k) = -e.rref(i, f);
        ++k;
    }
    return out;
}

} // namespace detail

template <Scalar T>
SubspaceBasis<T> subspace_basis(const Matrix<T>& a, SubspaceKind kind)
{
    switch (kind) {
    case SubspaceKind::ColumnSpace: {
        const auto e = rref(a);
        return {kind, a.select_cols(e.pivot_cols), a.rows()};
    }
    case SubspaceKind::RowSpace: {
        const auto e = rref(a);
        return {kind, e.rref.block(0, 0, e.rank, a.cols()).transpose(), a.cols()};
    }
    case SubspaceKind::Nullspace:
        return {kind, detail::special_solutions(rref(a)), a.cols()};
    case SubspaceKind::LeftNullspace:
        return {kind, detail::special_solutions(rref(a.transpose())), a.rows()};
    }
    throw std::invalid_argument("unknown subspace kind");
}

/// C(x) is contained in C(y), decided by rank(y) == rank([y x]).
template <Scalar T>
bool column_space_contains(const Matrix<T>& y, const Matrix<T>& x)
{
    if (y.rows() != x.rows())
        throw ShapeError("column spaces live in different ambient spaces: " + y.shape_string() + " vs " +
                         x.shape_string());
    return rank(hcat(y, x)) == rank(y);
}

/// C(a) == C(b) iff rank(a) == rank(b) == rank([a b]).
template <Scalar T>
bool same_column_space(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows())
        throw ShapeError("same_column_space: row counts differ (" + a.shape_string() + " vs " + b.shape_string() + ")");
    const auto ra = rank(a);
    return ra == rank(b) && ra == rank(hcat(a, b));
}

/// N(a) == N(b), equivalently C(a^T) == C(b^T).
template <Scalar T>
bool same_nullspace(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.cols())
        throw ShapeError("same_nullspace: column counts differ (" + a.shape_string() + " vs " + b.shape_string() + ")");
    return same_column_space(a.transpose(), b.transpose());
}

} // namespace crpinv
