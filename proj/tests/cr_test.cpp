#include <doctest.h>

#include "crpinv/cr.hpp"
#include "crpinv/subspace.hpp"
#include "oracles.hpp"

using namespace crpinv;

namespace
{

template <Scalar T>
void check_identity_at_pivots(const CrFactorization<T>& f)
{
    CHECK(f.r_factor.select_cols(f.pivot_cols) == Matrix<T>::identity(f.rank));
}

} // namespace

TEST_CASE("column 3 = column 1 + column 2")
{
    const RationalMatrix a{{1, 4, 5}, {2, 3, 5}};
    const auto f = cr_factorize(a);
    CHECK(f.c == RationalMatrix{{1, 4}, {2, 3}});
    CHECK(f.r_factor == RationalMatrix{{1, 0, 1}, {0, 1, 1}});
    CHECK(f.rank == 2);
    CHECK(f.c * f.r_factor == a);

    const auto g = cr_factorize(to_float(a));
    CHECK(g.c == to_float(f.c));
    CHECK(relative_error(g.r_factor, to_float(f.r_factor)) < 1e-15);
}

TEST_CASE("zero matrix gives empty factors")
{
    const auto f = cr_factorize(RationalMatrix(2, 3));
    CHECK(f.rank == 0);
    CHECK(f.c.rows() == 2);
    CHECK(f.c.cols() == 0);
    CHECK(f.r_factor.rows() == 0);
    CHECK(f.r_factor.cols() == 3);
    CHECK(f.c * f.r_factor == RationalMatrix(2, 3));

    const auto g = cr_factorize(FloatMatrix(2, 3));
    CHECK(g.rank == 0);
    CHECK(g.c.cols() == 0);
}

TEST_CASE("rank-one 2x2")
{
    const RationalMatrix a{{1, 2}, {2, 4}};
    const auto f = cr_factorize(a);
    CHECK(f.c == RationalMatrix{{1}, {2}});
    CHECK(f.r_factor == RationalMatrix{{1, 2}});
    CHECK(f.c * f.r_factor == a);
}

TEST_CASE("random rational matrices of every rank")
{
    Rng rng(314);
    for (std::size_t m = 1; m <= 8; ++m)
        for (std::size_t n = 1; n <= 8; n += 1 + (m % 2)) {
            const std::size_t r = oracle::uniform_size(rng, 0, std::min(m, n));
            const auto a = oracle::random_low_rank_integer(m, n, r, rng);
            const auto f = cr_factorize(a);
            CHECK(f.c * f.r_factor == a);
            CHECK(rank(f.c) == f.rank);
            CHECK(rank(f.r_factor) == f.rank);
            CHECK(rank(a) == f.rank);
            CHECK(f.c == a.select_cols(f.pivot_cols));
            check_identity_at_pivots(f);

            // N(A) = N(R): each basis annihilates the other matrix
            const auto na = subspace_basis(a, SubspaceKind::Nullspace).basis;
            const auto nr = subspace_basis(f.r_factor, SubspaceKind::Nullspace).basis;
            CHECK(f.r_factor * na == RationalMatrix(f.rank, na.cols()));
            CHECK(a * nr == RationalMatrix(m, nr.cols()));
            CHECK(na.cols() == nr.cols());
        }
}

TEST_CASE("C takes the first independent columns")
{
    // columns 0 and 1 are parallel; 2 is new; 3 = col0 + col2
    const RationalMatrix a{{1, 2, 0, 1}, {1, 2, 1, 2}, {0, 0, 1, 1}};
    const auto f = cr_factorize(a);
    CHECK(f.pivot_cols == std::vector<std::size_t>{0, 2});
    CHECK(f.r_factor == RationalMatrix{{1, 2, 0, 1}, {0, 0, 1, 1}});
}

TEST_CASE("float factors reproduce A")
{
    Rng rng(2718);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = oracle::uniform_size(rng, 1, 12);
        const std::size_t n = oracle::uniform_size(rng, 1, 12);
        const std::size_t r = oracle::uniform_size(rng, 0, std::min(m, n));
        const auto a = oracle::random_low_rank_float(m, n, r, rng);
        const auto f = cr_factorize(a);
        CHECK(f.rank == r);
        CHECK(oracle::norm(FloatMatrix(f.c * f.r_factor - a)) <= 1e-12 * std::max(oracle::norm(a), 1e-300));
        check_identity_at_pivots(f);
    }
}

TEST_CASE("completion of the 3x2 rank-one example")
{
    const RationalMatrix a{{1, 0}, {0, 0}, {0, 0}};
    const auto g = complete_to_generalized(a);
    CHECK(g.c0 == RationalMatrix::column({1, 0, 0}));
    CHECK(g.c1 == RationalMatrix{{0, 0}, {1, 0}, {0, 1}});
    CHECK(g.r0 == RationalMatrix{{1, 0}});
    CHECK(g.r1 == RationalMatrix{{0, 1}});
}

TEST_CASE("full-rank square input needs no completion")
{
    const RationalMatrix a{{2, 1}, {1, 1}};
    const auto g = complete_to_generalized(a);
    CHECK(g.c1.cols() == 0);
    CHECK(g.r1.rows() == 0);
    CHECK(g.c0 == a);
    CHECK(oracle::cofactor_determinant(g.c0) != 0);
}

TEST_CASE("completions are invertible")
{
    const auto g = complete_to_generalized(RationalMatrix{{1, 2}, {2, 4}});
    CHECK(oracle::cofactor_determinant(hcat(g.c0, g.c1)) != 0);
    CHECK(oracle::cofactor_determinant(vcat(g.r0, g.r1)) != 0);

    Rng rng(55);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = oracle::uniform_size(rng, 1, 6);
        const std::size_t n = oracle::uniform_size(rng, 1, 6);
        const auto a = oracle::random_low_rank_integer(m, n, oracle::uniform_size(rng, 0, std::min(m, n)), rng);
        const auto done = complete_to_generalized(a);
        const RationalMatrix cbar = hcat(done.c0, done.c1);
        const RationalMatrix rbar = vcat(done.r0, done.r1);
        REQUIRE(cbar.rows() == m);
        REQUIRE(cbar.cols() == m);
        REQUIRE(rbar.rows() == n);
        CHECK(oracle::cofactor_determinant(cbar) != 0);
        CHECK(oracle::cofactor_determinant(rbar) != 0);
        // completion columns are standard basis vectors
        for (std::size_t j = 0; j < done.c1.cols(); ++j) {
            int ones = 0, zeros = 0;
            for (std::size_t i = 0; i < m; ++i)
                (done.c1(i, j) == 1 ? ones : zeros) += (done.c1(i, j) == 0 || done.c1(i, j) == 1);
            CHECK(ones == 1);
            CHECK(zeros == static_cast<int>(m) - 1);
        }
    }
}
