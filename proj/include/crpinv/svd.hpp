#pragma once

#include <cstddef>
#include <vector>

#include "crpinv/matrix.hpp"

namespace crpinv
{

/// Thin SVD a = u * diag(singular_values) * v^T with k = min(m, n).
struct SvdResult
{
    FloatMatrix u;                      ///< m x k, orthonormal columns
    std::vector<double> singular_values; ///< nonincreasing, length k
    FloatMatrix v;                      ///< n x k, orthonormal columns
    std::size_t numerical_rank = 0;
    double tolerance = 0.0; ///< max(m, n) * eps * sigma_1
};

/// Singular values above this count toward the numerical rank.
double rank_tolerance(std::size_t rows, std::size_t cols, double sigma_max);

/// One-sided (Hestenes) Jacobi SVD. Throws ConvergenceError if the sweep cap
/// (30 * k sweeps) is exhausted.
SvdResult svd(const FloatMatrix& a);

/// Pseudoinverse sum_{i < rank} v_i u_i^T / sigma_i.
FloatMatrix pinv_from_svd(const SvdResult& s);

/// Direct pseudoinverse through the SVD; the float-domain reference.
FloatMatrix svd_pinv(const FloatMatrix& a);

std::size_t numerical_rank(const FloatMatrix& a);

} // namespace crpinv
