#include "crpinv/qr.hpp"

#include "crpinv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace crpinv
{

QrResult householder_qr(const FloatMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = std::min(m, n);

    // Column-major working copy; reflectors are stored below the diagonal.
    std::vector<double> w(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[j * m + i] = a(i, j);

    std::vector<double> tau(k, 0.0);
    std::vector<double> diag(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double* col = &w[j * m];
        double norm = 0.0;
        for (std::size_t i = j; i < m; ++i)
            norm = std::hypot(norm, col[i]);
        if (norm == 0.0) {
            diag[j] = 0.0;
            continue;
        }
        const double alpha = col[j] >= 0.0 ? -norm : norm;
        diag[j] = alpha;
        col[j] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = j; i < m; ++i)
            vnorm2 += col[i] * col[i];
        tau[j] = 2.0 / vnorm2;

        for (std::size_t c = j + 1; c < n; ++c) {
            double* other = &w[c * m];
            double s = 0.0;
            for (std::size_t i = j; i < m; ++i)
                s += col[i] * other[i];
            s *= tau[j];
            for (std::size_t i = j; i < m; ++i)
                other[i] -= s * col[i];
        }
    }

    // Accumulate Q = H_0 H_1 ... H_{k-1} applied to the first k unit vectors.
    std::vector<double> q(m * k, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        q[j * m + j] = 1.0;
    for (std::size_t h = k; h-- > 0;) {
        if (tau[h] == 0.0)
            continue;
        const double* v = &w[h * m];
        for (std::size_t c = 0; c < k; ++c) {
            double* qc = &q[c * m];
            double s = 0.0;
            for (std::size_t i = h; i < m; ++i)
                s += v[i] * qc[i];
            s *= tau[h];
            for (std::size_t i = h; i < m; ++i)
                qc[i] -= s * v[i];
        }
    }

    QrResult out{FloatMatrix(m, k), FloatMatrix(k, n)};
    for (std::size_t j = 0; j < k; ++j) {
        const double sign = diag[j] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < m; ++i)
            out.q(i, j) = sign * q[j * m + i];
        out.r(j, j) = sign * diag[j];
        for (std::size_t c = j + 1; c < n; ++c)
            out.r(j, c) = sign * w[c * m + j];
    }
    return out;
}

FloatMatrix full_column_rank_pinv(const FloatMatrix& c)
{
    const std::size_t m = c.rows();
    const std::size_t k = c.cols();
    if (k > m)
        throw SingularMatrixError(c.shape_string() + " matrix cannot have full column rank");
    const auto [q, t] = householder_qr(c);
    for (std::size_t j = 0; j < k; ++j)
        if (t(j, j) == 0.0)
            throw SingularMatrixError(c.shape_string() + " matrix lacks full column rank");

    // Back substitution T X = Q^T, one column of Q^T (row of Q) at a time.
    FloatMatrix out(k, m);
    for (std::size_t col = 0; col < m; ++col) {
        for (std::size_t i = k; i-- > 0;) {
            double s = q(col, i);
            for (std::size_t l = i + 1; l < k; ++l)
                s -= t(i, l) * out(l, col);
            out(i, col) = s / t(i, i);
        }
    }
    return out;
}

} // namespace crpinv
