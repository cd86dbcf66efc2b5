#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "crpinv/matrix.hpp"
#include "crpinv/pinv.hpp"
#include "crpinv/rref.hpp"
#include "crpinv/svd.hpp"

namespace crpinv
{

/// Sketching matrices P (m x p) and Q (n x q) for an m x n matrix A.
template <Scalar T>
struct SketchPair
{
    Matrix<T> p_mat;
    Matrix<T> q_mat;
    std::optional<std::uint64_t> seed; ///< empty for user-supplied sketches

    // Filled in by validate_rank_preserving.
    std::optional<std::size_t> rank_pta;
    std::optional<std::size_t> rank_aq;
    std::optional<std::size_t> rank_a;
};

template <Scalar T>
struct SketchedPinvResult
{
    Matrix<T> approx; ///< n x m
    bool rank_preserving = false;
    std::array<std::size_t, 3> achieved_ranks{}; ///< rank(P^T A), rank(A Q), rank(A)
};

/// The grouped factors ((P^T C R)^+ P^T C) and (R Q (C R Q)^+) whose product
/// is the sketched pseudoinverse of A = C R.
template <Scalar T>
struct SketchFactors
{
    Matrix<T> left;  ///< n x r
    Matrix<T> right; ///< r x m
};

namespace detail
{

/// Pseudoinverse together with the rank it was computed at: the SVD with its
/// tolerance rule for floats, the CR route for exact scalars.
template <Scalar T>
std::pair<Matrix<T>, std::size_t> pinv_and_rank(const Matrix<T>& x)
{
    if constexpr (is_exact_v<T>) {
        auto f = cr_factorize(x);
        const std::size_t r = f.rank;
        return {pinv_reverse_order(f), r};
    } else {
        const auto s = svd(x);
        return {pinv_from_svd(s), s.numerical_rank};
    }
}

template <Scalar T>
void require_sketch_shapes(const Matrix<T>& a, const SketchPair<T>& s)
{
    if (s.p_mat.rows() != a.rows() || s.q_mat.rows() != a.cols())
        throw ShapeError("sketch shapes do not conform: A is " + a.shape_string() + ", P is " +
                         s.p_mat.shape_string() + ", Q is " + s.q_mat.shape_string());
}

} // namespace detail

/// True iff rank(P^T A) = rank(A Q) = rank(A); the three ranks are cached on
/// the sketch.
template <Scalar T>
bool validate_rank_preserving(const Matrix<T>& a, SketchPair<T>& sketch)
{
    detail::require_sketch_shapes(a, sketch);
    sketch.rank_pta = rank(Matrix<T>(sketch.p_mat.transpose() * a));
    sketch.rank_aq = rank(Matrix<T>(a * sketch.q_mat));
    sketch.rank_a = rank(a);
    return *sketch.rank_pta == *sketch.rank_a && *sketch.rank_aq == *sketch.rank_a;
}

/// (P^T A)^+ (P^T A) Q (A Q)^+, associated left to right. A cached
/// sketch.rank_a is trusted instead of recomputing rank(A).
template <Scalar T>
SketchedPinvResult<T> pinv_sketched(const Matrix<T>& a, const SketchPair<T>& sketch)
{
    detail::require_sketch_shapes(a, sketch);
    const Matrix<T> pta = sketch.p_mat.transpose() * a;
    const Matrix<T> aq = a * sketch.q_mat;
    auto [pta_plus, rank_pta] = detail::pinv_and_rank(pta);
    auto [aq_plus, rank_aq] = detail::pinv_and_rank(aq);
    const std::size_t rank_a = sketch.rank_a ? *sketch.rank_a : rank(a);

    SketchedPinvResult<T> out;
    out.approx = pta_plus * pta * sketch.q_mat * aq_plus;
    out.achieved_ranks = {rank_pta, rank_aq, rank_a};
    out.rank_preserving = rank_pta == rank_a && rank_aq == rank_a;
    return out;
}

template <Scalar T>
SketchFactors<T> sketched_factors(const Matrix<T>& c, const Matrix<T>& r, const SketchPair<T>& sketch)
{
    if (c.cols() != r.rows())
        throw ShapeError("sketched_factors: C is " + c.shape_string() + ", R is " + r.shape_string());
    const Matrix<T> a = c * r;
    detail::require_sketch_shapes(a, sketch);
    const Matrix<T> pt = sketch.p_mat.transpose();
    const Matrix<T> rq = r * sketch.q_mat;
    return {detail::pinv_and_rank(Matrix<T>(pt * a)).first * pt * c,
            rq * detail::pinv_and_rank(Matrix<T>(c * rq)).first};
}

/// Gaussian sketch pair: P (m x p) drawn first, then Q (n x q), from one
/// generator seeded with `seed`.
SketchPair<double> gaussian_sketch(std::size_t m, std::size_t n, std::size_t p, std::size_t q, std::uint64_t seed);

/// Randomized pseudoinverse with Gaussian P (m x p) and Q (n x q).
/// Requires 1 <= p <= m and 1 <= q <= n. `known_rank_a` skips the SVD of A
/// used only to report rank preservation.
SketchedPinvResult<double> rpinv(const FloatMatrix& a, std::size_t p, std::size_t q, std::uint64_t seed,
                                 std::optional<std::size_t> known_rank_a = std::nullopt);

/// Pseudoinverse of the rank-s randomized SVD approximation
/// A_s = Qh U_s S_s V_s^T with Qh = orth(A * Omega), Omega n x s Gaussian.
FloatMatrix rsvd_pinv(const FloatMatrix& a, std::size_t s, std::uint64_t seed);

} // namespace crpinv
