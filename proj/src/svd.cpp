#include "crpinv/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace crpinv
{
namespace
{

constexpr double eps = std::numeric_limits<double>::epsilon();

double dot(const double* x, const double* y, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i] * y[i];
    return s;
}

void rotate(double* x, double* y, std::size_t n, double c, double s)
{
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

// Orthonormal column-major factors of a tall (m >= n) matrix.
struct TallSvd
{
    std::vector<double> u; // m x n, column-major
    std::vector<double> v; // n x n, column-major
    std::vector<double> sigma;
};

// One-sided Jacobi on the columns of w (m x n, column-major, m >= n).
TallSvd jacobi_columns(std::vector<double> w_in, std::size_t m, std::size_t n)
{
    TallSvd out;
    std::vector<double>& w = out.u;
    w = std::move(w_in);

    std::vector<double>& v = out.v;
    v.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        v[j * n + j] = 1.0;

    std::vector<double> norms(n);
    const double threshold = std::sqrt(static_cast<double>(m)) * eps;
    const std::size_t max_sweeps = std::max<std::size_t>(30 * n, 30);

    bool converged = n < 2;
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t j = 0; j < n; ++j)
            norms[j] = dot(&w[j * m], &w[j * m], m);

        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = norms[p];
                const double beta = norms[q];
                if (alpha == 0.0 || beta == 0.0)
                    continue;
                const double gamma = dot(&w[p * m], &w[q * m], m);
                if (std::fabs(gamma) <= threshold * std::sqrt(alpha) * std::sqrt(beta))
                    continue;

                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate(&w[p * m], &w[q * m], m, c, s);
                rotate(&v[p * n], &v[q * n], n, c, s);
                norms[p] = alpha - t * gamma;
                norms[q] = beta + t * gamma;
            }
        }
        converged = !rotated;
    }
    if (!converged)
        throw ConvergenceError("Jacobi SVD did not converge within " + std::to_string(max_sweeps) + " sweeps");

    out.sigma.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double nrm = std::sqrt(dot(&w[j * m], &w[j * m], m));
        out.sigma[j] = nrm;
        if (nrm > 0.0)
            for (std::size_t i = 0; i < m; ++i)
                w[j * m + i] /= nrm;
    }
    return out;
}

// Householder QR with column pivoting of a column-major m x n matrix
// (m >= n): a P = Q R. Returns R^T (n x n, column-major), the explicit Q
// (m x n, column-major) and the permutation (perm[k] = original column).
struct PivotedQr
{
    std::vector<double> rt;
    std::vector<double> q;
    std::vector<std::size_t> perm;
};

PivotedQr pivoted_qr(std::vector<double> w, std::size_t m, std::size_t n)
{
    PivotedQr out;
    out.perm.resize(n);
    std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
    std::vector<double> tau(n, 0.0), diag(n, 0.0), norms(n);
    for (std::size_t j = 0; j < n; ++j)
        norms[j] = dot(&w[j * m], &w[j * m], m);

    for (std::size_t j = 0; j < n; ++j) {
        // Partial column norms are recomputed exactly; n is small enough.
        std::size_t best = j;
        for (std::size_t c = j; c < n; ++c) {
            norms[c] = dot(&w[c * m + j], &w[c * m + j], m - j);
            if (norms[c] > norms[best])
                best = c;
        }
        if (best != j) {
            std::swap_ranges(w.begin() + static_cast<std::ptrdiff_t>(j * m),
                             w.begin() + static_cast<std::ptrdiff_t>((j + 1) * m),
                             w.begin() + static_cast<std::ptrdiff_t>(best * m));
            std::swap(out.perm[j], out.perm[best]);
        }
        double* col = &w[j * m];
        const double norm = std::sqrt(dot(col + j, col + j, m - j));
        if (norm == 0.0)
            continue;
        const double alpha = col[j] >= 0.0 ? -norm : norm;
        diag[j] = alpha;
        col[j] -= alpha;
        const double vnorm2 = dot(col + j, col + j, m - j);
        tau[j] = 2.0 / vnorm2;
        for (std::size_t c = j + 1; c < n; ++c) {
            double* other = &w[c * m];
            const double f = tau[j] * dot(col + j, other + j, m - j);
            for (std::size_t i = j; i < m; ++i)
                other[i] -= f * col[i];
        }
    }

    out.rt.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        out.rt[j * n + j] = diag[j];
        for (std::size_t c = j + 1; c < n; ++c)
            out.rt[j * n + c] = w[c * m + j]; // R(j, c) stored at R^T(c, j)
    }

    out.q.assign(m * n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        out.q[j * m + j] = 1.0;
    for (std::size_t h = n; h-- > 0;) {
        if (tau[h] == 0.0)
            continue;
        const double* v = &w[h * m];
        for (std::size_t c = 0; c < n; ++c) {
            double* qc = &out.q[c * m];
            const double f = tau[h] * dot(v + h, qc + h, m - h);
            for (std::size_t i = h; i < m; ++i)
                qc[i] -= f * v[i];
        }
    }
    return out;
}

// a = (Q W) S (P U')^T from the Jacobi SVD R^T W = U' S of the pivoted QR
// factor; Jacobi on R^T converges in far fewer sweeps than on a itself.
TallSvd jacobi_tall(const FloatMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<double> w(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[j * m + i] = a(i, j);
    if (n == 0)
        return {std::move(w), {}, {}};

    PivotedQr qr = pivoted_qr(std::move(w), m, n);
    TallSvd inner = jacobi_columns(std::move(qr.rt), n, n);

    TallSvd out;
    out.sigma = std::move(inner.sigma);
    // U = Q W: column k is sum_l Q(:, l) W(l, k).
    out.u.assign(m * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double* uk = &out.u[k * m];
        for (std::size_t l = 0; l < n; ++l) {
            const double f = inner.v[k * n + l];
            if (f == 0.0)
                continue;
            const double* ql = &qr.q[l * m];
            for (std::size_t i = 0; i < m; ++i)
                uk[i] += f * ql[i];
        }
    }
    // V = P U': row perm[i] of V is row i of U'.
    out.v.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            out.v[k * n + qr.perm[i]] = inner.u[k * n + i];
    return out;
}

// Replaces the listed columns of q (m x k, column-major) by unit vectors
// orthogonal to every other column.
void complete_orthonormal(std::vector<double>& q, std::size_t m, std::size_t k, const std::vector<std::size_t>& missing)
{
    std::vector<bool> valid(k, true);
    for (auto j : missing)
        valid[j] = false;

    std::vector<double> cand(m);
    for (auto j : missing) {
        double best_norm = -1.0;
        std::vector<double> best;
        for (std::size_t e = 0; e < m; ++e) {
            std::fill(cand.begin(), cand.end(), 0.0);
            cand[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = 0; c < k; ++c) {
                    if (!valid[c])
                        continue;
                    const double proj = dot(&q[c * m], cand.data(), m);
                    for (std::size_t i = 0; i < m; ++i)
                        cand[i] -= proj * q[c * m + i];
                }
            }
            const double nrm = std::sqrt(dot(cand.data(), cand.data(), m));
            if (nrm > best_norm) {
                best_norm = nrm;
                best = cand;
            }
            if (best_norm > 0.5)
                break;
        }
        for (std::size_t i = 0; i < m; ++i)
            q[j * m + i] = best[i] / best_norm;
        valid[j] = true;
    }
}

} // namespace

double rank_tolerance(std::size_t rows, std::size_t cols, double sigma_max)
{
    return static_cast<double>(std::max(rows, cols)) * eps * sigma_max;
}

SvdResult svd(const FloatMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const bool wide = m < n;
    const FloatMatrix tall = wide ? a.transpose() : a;
    const std::size_t tm = tall.rows();
    const std::size_t k = tall.cols();

    TallSvd t = jacobi_tall(tall);

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return t.sigma[x] > t.sigma[y]; });

    std::vector<double> uc(tm * k), vc(k * k);
    SvdResult out;
    out.singular_values.resize(k);
    std::vector<std::size_t> missing;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        out.singular_values[j] = t.sigma[src];
        std::copy_n(&t.u[src * tm], tm, &uc[j * tm]);
        std::copy_n(&t.v[src * k], k, &vc[j * k]);
        if (t.sigma[src] == 0.0)
            missing.push_back(j);
    }
    // Columns of t.u = Q W are orthonormal by construction; the zero singular
    // values leave zero columns in t.v instead.
    if (!missing.empty())
        complete_orthonormal(vc, k, k, missing);

    const double sigma1 = k ? out.singular_values[0] : 0.0;
    out.tolerance = rank_tolerance(m, n, sigma1);
    out.numerical_rank = static_cast<std::size_t>(
        std::count_if(out.singular_values.begin(), out.singular_values.end(), [&](double s) { return s > out.tolerance; }));

    FloatMatrix u_tall(tm, k), v_tall(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < tm; ++i)
            u_tall(i, j) = uc[j * tm + i];
        for (std::size_t i = 0; i < k; ++i)
            v_tall(i, j) = vc[j * k + i];
    }
    if (wide) {
        out.u = std::move(v_tall);
        out.v = std::move(u_tall);
    } else {
        out.u = std::move(u_tall);
        out.v = std::move(v_tall);
    }
    return out;
}

FloatMatrix pinv_from_svd(const SvdResult& s)
{
    const std::size_t m = s.u.rows();
    const std::size_t n = s.v.rows();
    FloatMatrix out(n, m);
    for (std::size_t r = 0; r < s.numerical_rank; ++r) {
        const double inv = 1.0 / s.singular_values[r];
        for (std::size_t i = 0; i < n; ++i) {
            const double vi = s.v(i, r) * inv;
            if (vi == 0.0)
                continue;
            auto row = out.row(i);
            for (std::size_t j = 0; j < m; ++j)
                row[j] += vi * s.u(j, r);
        }
    }
    return out;
}

FloatMatrix svd_pinv(const FloatMatrix& a) { return pinv_from_svd(svd(a)); }

std::size_t numerical_rank(const FloatMatrix& a) { return svd(a).numerical_rank; }

} // namespace crpinv
