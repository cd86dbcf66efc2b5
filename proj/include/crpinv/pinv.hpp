#pragma once

#include <array>
#include <limits>
#include <cstddef>
#include <string>
#include <utility>

#include "crpinv/cr.hpp"
#include "crpinv/matrix.hpp"
#include "crpinv/qr.hpp"
#include "crpinv/rref.hpp"
#include "crpinv/subspace.hpp"

namespace crpinv
{

inline constexpr double default_tolerance = 1e-10;

// ---------------------------------------------------------------------------
// Pseudoinverse formulas
// ---------------------------------------------------------------------------

/// R^+ C^+ with C^+ = (C^T C)^{-1} C^T and R^+ = R^T (R R^T)^{-1}.
/// Requires full column rank C and full row rank R; a rank-deficient factor
/// surfaces as SingularMatrixError. Floats evaluate both factors through QR:
/// C chosen as leading independent columns can be far worse conditioned than
/// A, and forming C^T C would square that.
template <Scalar T>
Matrix<T> pinv_reverse_order(const CrFactorization<T>& f)
{
    const std::size_t m = f.rows();
    const std::size_t n = f.cols();
    if (f.rank == 0)
        return Matrix<T>(n, m);
    if constexpr (!is_exact_v<T>)
        return full_column_rank_pinv(f.r_factor.transpose()).transpose() * full_column_rank_pinv(f.c);
    const Matrix<T> ct = f.c.transpose();
    const Matrix<T> rt = f.r_factor.transpose();
    const Matrix<T> c_plus = inverse(ct * f.c) * ct;
    const Matrix<T> r_plus = rt * inverse(f.r_factor * rt);
    return r_plus * c_plus;
}

/// R^T (C^T A R^T)^{-1} C^T; a single r x r inverse. The value depends only
/// on C(C) and C(R^T), so floats substitute orthonormal bases Q1, Q2 of those
/// spaces: Q2 (Q1^T A Q2)^{-1} Q1^T.
template <Scalar T>
Matrix<T> pinv_rational_closed_form(const CrFactorization<T>& f, const Matrix<T>& a)
{
    if (a.rows() != f.rows() || a.cols() != f.cols())
        throw ShapeError("closed form: A is " + a.shape_string() + " but factors give " + std::to_string(f.rows()) +
                         "x" + std::to_string(f.cols()));
    if (f.rank == 0)
        return Matrix<T>(a.cols(), a.rows());
    Matrix<T> ct, rt;
    if constexpr (is_exact_v<T>) {
        ct = f.c.transpose();
        rt = f.r_factor.transpose();
    } else {
        ct = orthonormalize(f.c).transpose();
        rt = orthonormalize(f.r_factor.transpose());
    }
    return rt * inverse(ct * a * rt) * ct;
}

/// Moore-Penrose pseudoinverse of any matrix through its CR factorization.
template <Scalar T>
Matrix<T> pinv_via_cr(const Matrix<T>& a, double scale_floor = 0.0)
{
    return pinv_reverse_order(cr_factorize(a, scale_floor));
}

/// (C^+ C R)^+ (C R R^+)^+ = (CR)^+ for any conformable C, R. Every inner and
/// outer pseudoinverse is taken through a fresh CR factorization.
template <Scalar T>
Matrix<T> pinv_always(const Matrix<T>& c, const Matrix<T>& r)
{
    if (c.cols() != r.rows())
        throw ShapeError("pinv_always: C is " + c.shape_string() + ", R is " + r.shape_string());
    if constexpr (is_exact_v<T>) {
        const Matrix<T> c_plus = pinv_via_cr(c);
        const Matrix<T> r_plus = pinv_via_cr(r);
        const Matrix<T> a = c * r;
        const Matrix<T> left = pinv_via_cr(Matrix<T>(c_plus * c) * r);
        const Matrix<T> right = pinv_via_cr(a * r_plus);
        return left * right;
    } else {
        // With C = Cc Rc and R = Cr Rr, C^+ C = Rc^+ Rc and R R^+ = Cr Cr^+ are
        // the orthogonal projectors onto C(Rc^T) and C(Cr). Forming them from
        // orthonormal bases keeps their noise at eps instead of cond(C) * eps.
        auto projector = [](const FloatMatrix& basis) {
            if (basis.cols() == 0)
                return FloatMatrix(basis.rows(), basis.rows());
            const FloatMatrix q = orthonormalize(basis);
            return FloatMatrix(q * q.transpose());
        };
        const FloatMatrix c_plus_c = projector(cr_factorize(c).r_factor.transpose());
        const FloatMatrix r_r_plus = projector(cr_factorize(r).c);
        // The projectors have unit norm, so r and c set the scale of the
        // intermediates even when the products cancel to rounding noise.
        const FloatMatrix left = pinv_via_cr(FloatMatrix(c_plus_c * r), max_abs(r));
        const FloatMatrix right = pinv_via_cr(FloatMatrix(c * r_r_plus), max_abs(c));
        return left * right;
    }
}

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

namespace detail
{

/// Exact: 0 when equal, else the relative residual (always > 0).
/// Float: ||lhs - rhs||_F / ||rhs||_F (absolute when rhs = 0).
template <Scalar T>
double residual(const Matrix<T>& lhs, const Matrix<T>& rhs)
{
    if constexpr (is_exact_v<T>) {
        if (lhs == rhs)
            return 0.0;
        const double r = relative_error(lhs, rhs);
        return r > 0.0 ? r : std::numeric_limits<double>::min();
    } else {
        return relative_error(lhs, rhs);
    }
}

template <Scalar T>
bool within(double res, double tol)
{
    if constexpr (is_exact_v<T>)
        return res == 0.0;
    else
        return res <= tol;
}

template <Scalar T>
void require_conformable(const Matrix<T>& c, const Matrix<T>& r, const char* who)
{
    if (c.cols() != r.rows())
        throw ShapeError(std::string(who) + ": C is " + c.shape_string() + ", R is " + r.shape_string());
}

} // namespace detail

/// Penrose identities: (i) AGA = A, (ii) GAG = G, (iii) (GA)^T = GA,
/// (iv) (AG)^T = AG.
struct PenroseReport
{
    std::array<bool, 4> holds{};
    std::array<double, 4> residuals{}; ///< zero for exact equality

    bool all() const { return holds[0] && holds[1] && holds[2] && holds[3]; }
};

template <Scalar T>
PenroseReport check_penrose(const Matrix<T>& a, const Matrix<T>& g, double tol = default_tolerance)
{
    if (g.rows() != a.cols() || g.cols() != a.rows())
        throw ShapeError("check_penrose: G must be " + std::to_string(a.cols()) + "x" + std::to_string(a.rows()) +
                         ", got " + g.shape_string());
    const Matrix<T> ag = a * g;
    const Matrix<T> ga = g * a;
    PenroseReport rep;
    rep.residuals[0] = detail::residual(Matrix<T>(ag * a), a);
    rep.residuals[1] = detail::residual(Matrix<T>(ga * g), g);
    rep.residuals[2] = detail::residual(ga.transpose(), ga);
    rep.residuals[3] = detail::residual(ag.transpose(), ag);
    for (std::size_t k = 0; k < 4; ++k)
        rep.holds[k] = detail::within<T>(rep.residuals[k], tol);
    return rep;
}

/// Greville: C(R R^T C^T) in C(C^T) and C(C^T C R) in C(R); necessary and
/// sufficient for (CR)^+ = R^+ C^+.
template <Scalar T>
bool check_greville(const Matrix<T>& c, const Matrix<T>& r)
{
    detail::require_conformable(c, r, "check_greville");
    const Matrix<T> ct = c.transpose();
    const Matrix<T> rrt_ct = r * r.transpose() * ct;
    const Matrix<T> ctc_r = ct * c * r;
    return column_space_contains(ct, rrt_ct) && column_space_contains(r, ctc_r);
}

/// C^+ C (R R^T C^T C) R R^+ = R R^T C^T C.
template <Scalar T>
bool check_projection_equation(const Matrix<T>& c, const Matrix<T>& r, double tol = default_tolerance)
{
    detail::require_conformable(c, r, "check_projection_equation");
    const Matrix<T> c_plus = pinv_via_cr(c);
    const Matrix<T> r_plus = pinv_via_cr(r);
    const Matrix<T> core = r * r.transpose() * c.transpose() * c;
    const Matrix<T> lhs = c_plus * c * core * r * r_plus;
    return detail::within<T>(detail::residual(lhs, core), tol);
}

/// (C^+ C (R A^T) = R A^T, R R^+ (C^T A) = C^T A) for A = CR.
template <Scalar T>
std::pair<bool, bool> check_reverse_order_demands(const Matrix<T>& c, const Matrix<T>& r,
                                                  double tol = default_tolerance)
{
    detail::require_conformable(c, r, "check_reverse_order_demands");
    const Matrix<T> a = c * r;
    const Matrix<T> r_at = r * a.transpose();
    const Matrix<T> ct_a = c.transpose() * a;
    const Matrix<T> lhs1 = pinv_via_cr(c) * c * r_at;
    const Matrix<T> lhs2 = r * pinv_via_cr(r) * ct_a;
    return {detail::within<T>(detail::residual(lhs1, r_at), tol), detail::within<T>(detail::residual(lhs2, ct_a), tol)};
}

// ---------------------------------------------------------------------------
// Generalized inverses G = [R0; R1]^{-1} [I z11; z21 z22] [C0 C1]^{-1}
// ---------------------------------------------------------------------------

template <Scalar T>
struct GeneralizedInverseSpec
{
    Matrix<T> c0, c1, r0, r1;
    Matrix<T> z11; ///< r x (m - r), upper-right free block
    Matrix<T> z21; ///< (n - r) x r
    Matrix<T> z22; ///< (n - r) x (m - r)

    std::size_t rank() const { return c0.cols(); }
    std::size_t rows() const { return c0.rows(); }
    std::size_t cols() const { return r0.cols(); }
};

/// Completes A and attaches the free blocks; shapes are checked by
/// generalized_inverse.
template <Scalar T>
GeneralizedInverseSpec<T> make_generalized_inverse_spec(const Matrix<T>& a, Matrix<T> z11, Matrix<T> z21,
                                                        Matrix<T> z22)
{
    auto done = complete_to_generalized(a);
    GeneralizedInverseSpec<T> s{std::move(done.c0), std::move(done.c1), std::move(done.r0), std::move(done.r1),
                                std::move(z11),      std::move(z21),      std::move(z22)};
    return s;
}

/// All free blocks zero.
template <Scalar T>
GeneralizedInverseSpec<T> make_generalized_inverse_spec(const Matrix<T>& a)
{
    auto done = complete_to_generalized(a);
    const std::size_t r = done.c0.cols();
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    return {std::move(done.c0), std::move(done.c1), std::move(done.r0), std::move(done.r1),
            Matrix<T>(r, m - r), Matrix<T>(n - r, r), Matrix<T>(n - r, m - r)};
}

template <Scalar T>
Matrix<T> generalized_inverse(const GeneralizedInverseSpec<T>& s)
{
    const std::size_t m = s.rows();
    const std::size_t n = s.cols();
    const std::size_t r = s.rank();
    auto expect = [](const Matrix<T>& x, std::size_t rows, std::size_t cols, const char* name) {
        if (x.rows() != rows || x.cols() != cols)
            throw ShapeError(std::string("generalized_inverse: ") + name + " is " + x.shape_string() + ", expected " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    };
    if (r > m || r > n)
        throw ShapeError("generalized_inverse: rank exceeds matrix dimensions");
    expect(s.c1, m, m - r, "c1");
    expect(s.r0, r, n, "r0");
    expect(s.r1, n - r, n, "r1");
    expect(s.z11, r, m - r, "z11");
    expect(s.z21, n - r, r, "z21");
    expect(s.z22, n - r, m - r, "z22");

    const Matrix<T> middle = vcat(hcat(Matrix<T>::identity(r), s.z11), hcat(s.z21, s.z22));
    return inverse(vcat(s.r0, s.r1)) * middle * inverse(hcat(s.c0, s.c1));
}

// ---------------------------------------------------------------------------
// Complete solutions
// ---------------------------------------------------------------------------

/// x = G b + (I - G A) z. Solves A x = b for every z when AGA = A and b is in
/// C(A); otherwise throws InconsistentSystemError with the residual of A x - b.
template <Scalar T>
Matrix<T> solve_complete_forward(const Matrix<T>& a, const Matrix<T>& g, const Matrix<T>& b, const Matrix<T>& z,
                                 double tol = default_tolerance)
{
    if (g.rows() != a.cols() || g.cols() != a.rows())
        throw ShapeError("solve_complete_forward: G must have the transposed shape of A");
    if (b.rows() != a.rows() || b.cols() != 1 || z.rows() != a.cols() || z.cols() != 1)
        throw ShapeError("solve_complete_forward: b must be m x 1 and z n x 1");
    const Matrix<T> x = g * b + (Matrix<T>::identity(a.cols()) - g * a) * z;
    const double res = detail::residual(Matrix<T>(a * x), b);
    if (!detail::within<T>(res, tol))
        throw InconsistentSystemError("inconsistent system: b is not in the column space of A (or AGA != A)", res);
    return x;
}

/// b = A x + (I - A A^+) w. Satisfies A^+ b = x for every w when x is in the
/// row space of A; otherwise throws InconsistentSystemError.
template <Scalar T>
Matrix<T> solve_complete_adjoint(const Matrix<T>& a, const Matrix<T>& aplus, const Matrix<T>& x, const Matrix<T>& w,
                                 double tol = default_tolerance)
{
    if (aplus.rows() != a.cols() || aplus.cols() != a.rows())
        throw ShapeError("solve_complete_adjoint: A^+ must have the transposed shape of A");
    if (x.rows() != a.cols() || x.cols() != 1 || w.rows() != a.rows() || w.cols() != 1)
        throw ShapeError("solve_complete_adjoint: x must be n x 1 and w m x 1");
    const Matrix<T> b = a * x + (Matrix<T>::identity(a.rows()) - a * aplus) * w;
    const double res = detail::residual(Matrix<T>(aplus * b), x);
    if (!detail::within<T>(res, tol))
        throw InconsistentSystemError("x is not in the row space of A", res);
    return b;
}

} // namespace crpinv
