#include "crpinv/sketch.hpp"

#include <string>

#include "crpinv/qr.hpp"
#include "crpinv/random.hpp"

namespace crpinv
{

SketchPair<double> gaussian_sketch(std::size_t m, std::size_t n, std::size_t p, std::size_t q, std::uint64_t seed)
{
    Rng rng(seed);
    SketchPair<double> s;
    s.p_mat = gaussian_matrix(m, p, rng);
    s.q_mat = gaussian_matrix(n, q, rng);
    s.seed = seed;
    return s;
}

SketchedPinvResult<double> rpinv(const FloatMatrix& a, std::size_t p, std::size_t q, std::uint64_t seed,
                                 std::optional<std::size_t> known_rank_a)
{
    if (p < 1 || p > a.rows())
        throw std::out_of_range("rpinv: p = " + std::to_string(p) + " outside [1, " + std::to_string(a.rows()) + "]");
    if (q < 1 || q > a.cols())
        throw std::out_of_range("rpinv: q = " + std::to_string(q) + " outside [1, " + std::to_string(a.cols()) + "]");
    auto sketch = gaussian_sketch(a.rows(), a.cols(), p, q, seed);
    sketch.rank_a = known_rank_a;
    return pinv_sketched(a, sketch);
}

FloatMatrix rsvd_pinv(const FloatMatrix& a, std::size_t s, std::uint64_t seed)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (s < 1 || s > std::min(m, n))
        throw std::out_of_range("rsvd_pinv: s = " + std::to_string(s) + " outside [1, " +
                                std::to_string(std::min(m, n)) + "]");
    Rng rng(seed);
    const FloatMatrix omega = gaussian_matrix(n, s, rng);
    const FloatMatrix basis = orthonormalize(a * omega); // m x s
    const auto small = svd(basis.transpose() * a);       // s x n = U S V^T
    const FloatMatrix left = basis * small.u;            // m x s

    FloatMatrix out(n, m);
    for (std::size_t k = 0; k < small.numerical_rank; ++k) {
        const double inv = 1.0 / small.singular_values[k];
        for (std::size_t i = 0; i < n; ++i) {
            const double vi = small.v(i, k) * inv;
            auto row = out.row(i);
            for (std::size_t j = 0; j < m; ++j)
                row[j] += vi * left(j, k);
        }
    }
    return out;
}

} // namespace crpinv
