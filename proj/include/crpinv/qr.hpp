#pragma once

#include "crpinv/matrix.hpp"

namespace crpinv
{

/// Thin Householder QR: a (m x n) = q (m x k) * r (k x n), k = min(m, n).
/// The diagonal of r is made nonnegative, so q is unique for full-rank a.
struct QrResult
{
    FloatMatrix q;
    FloatMatrix r;
};

QrResult householder_qr(const FloatMatrix& a);

/// Orthonormal basis of the columns of y (the q factor of its thin QR).
inline FloatMatrix orthonormalize(const FloatMatrix& y) { return householder_qr(y).q; }

/// (c^T c)^{-1} c^T for full column rank c, evaluated as T^{-1} Q^T from the
/// thin QR so the error grows with cond(c) rather than its square. Throws
/// SingularMatrixError on a zero diagonal of T.
FloatMatrix full_column_rank_pinv(const FloatMatrix& c);

} // namespace crpinv
