#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

#include "crpinv/errors.hpp"
#include "crpinv/matrix_io.hpp"
#include "crpinv/random.hpp"
#include "oracles.hpp"

using namespace crpinv;

namespace
{

bool bit_identical(const FloatMatrix& a, const FloatMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    return a.data().empty() || std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(double)) == 0;
}

FloatMatrix mm_round_trip(const FloatMatrix& a, MatrixMarketLayout layout)
{
    std::stringstream ss;
    write_matrix_market(ss, a, layout);
    return read_matrix_market(ss);
}

FloatMatrix parse_mm(const std::string& text)
{
    std::istringstream in(text);
    return read_matrix_market(in);
}

} // namespace

TEST_CASE("Matrix Market round trips are bit exact")
{
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        FloatMatrix a = gaussian_matrix(oracle::uniform_size(rng, 0, 7), oracle::uniform_size(rng, 0, 7), rng);
        if (!a.empty()) {
            a(0, 0) = 0.1;
            a.data().back() = -0.0;
        }
        CHECK(bit_identical(mm_round_trip(a, MatrixMarketLayout::Array), a));
        CHECK(bit_identical(mm_round_trip(a, MatrixMarketLayout::Coordinate), a));
    }
    const FloatMatrix extremes{{std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()},
                               {1.0 / 3.0, -1e-300}};
    CHECK(bit_identical(mm_round_trip(extremes, MatrixMarketLayout::Array), extremes));
}

TEST_CASE("Matrix Market array layout is column major")
{
    const auto a = parse_mm("%%MatrixMarket matrix array real general\n% comment\n2 3\n1\n2\n3\n4\n5\n6\n");
    CHECK(a == FloatMatrix{{1, 3, 5}, {2, 4, 6}});
}

TEST_CASE("Matrix Market coordinate and symmetric variants")
{
    const auto sparse = parse_mm("%%MatrixMarket matrix coordinate real general\n3 2 2\n1 1 1.5\n3 2 -2\n");
    CHECK(sparse == FloatMatrix{{1.5, 0}, {0, 0}, {0, -2}});

    const auto sym = parse_mm("%%MatrixMarket matrix coordinate integer symmetric\n2 2 2\n1 1 4\n2 1 7\n");
    CHECK(sym == FloatMatrix{{4, 7}, {7, 0}});

    const auto sym_array = parse_mm("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n");
    CHECK(sym_array == FloatMatrix{{1, 2}, {2, 3}});

    const auto skew = parse_mm("%%MatrixMarket matrix array real skew-symmetric\n3 3\n1\n2\n3\n");
    CHECK(skew == FloatMatrix{{0, -1, -2}, {1, 0, -3}, {2, 3, 0}});

    const auto pattern = parse_mm("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n2 1\n");
    CHECK(pattern == FloatMatrix{{0, 0}, {1, 0}});
}

TEST_CASE("malformed Matrix Market input")
{
    CHECK_THROWS_AS(parse_mm(""), ParseError);
    CHECK_THROWS_AS(parse_mm("%%MatrixMarket matrix array complex general\n1 1\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_mm("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n"), ParseError);
    CHECK_THROWS_AS(parse_mm("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_mm("%%MatrixMarket matrix array real general\n1 1\nabc\n"), ParseError);
    CHECK_THROWS_AS(parse_mm("%%MatrixMarket matrix array real symmetric\n2 3\n1\n"), ParseError);
}

TEST_CASE("rational text format")
{
    const RationalMatrix a{{Rational(-8, 15), Rational(3, 5)}, {Rational(7, 15), Rational(-2, 5)}, {0, 1}};
    std::stringstream ss;
    write_rational_text(ss, a);
    CHECK(ss.str() == "3 2\n-8/15 3/5\n7/15 -2/5\n0 1\n");
    CHECK(read_rational_text(ss) == a);

    std::istringstream reduced("1 2\n2/4 -6/3\n");
    CHECK(read_rational_text(reduced) == RationalMatrix{{Rational(1, 2), -2}});

    std::stringstream empty;
    write_rational_text(empty, RationalMatrix(3, 0));
    const auto back = read_rational_text(empty);
    CHECK(back.rows() == 3);
    CHECK(back.cols() == 0);
}

TEST_CASE("malformed rational text")
{
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_rational_text(in);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("2\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse("2 2\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse("1 2\n1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse("1 1\n1/0\n"), ParseError);
    CHECK_THROWS_AS(parse("1 1\n1\n2\n"), ParseError);
}

TEST_CASE("files are loaded in either domain")
{
    const auto dir = std::filesystem::temp_directory_path() / "crpinv_io_test";
    std::filesystem::create_directories(dir);

    const RationalMatrix exact{{1, Rational(1, 3)}, {Rational(-5, 2), 0}};
    save_matrix(dir / "exact.txt", exact);
    CHECK(load_rational_matrix(dir / "exact.txt") == exact);
    CHECK(load_float_matrix(dir / "exact.txt") == to_float(exact));

    const FloatMatrix f{{0.5, 0.1}, {-3, 1e-3}};
    save_matrix(dir / "f.mtx", f, MatrixMarketLayout::Coordinate);
    CHECK(bit_identical(load_float_matrix(dir / "f.mtx"), f));
    // floats become their exact dyadic values
    CHECK(load_rational_matrix(dir / "f.mtx") == to_rational(f));

    CHECK_THROWS_AS(load_float_matrix(dir / "missing.mtx"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("shortest round-trip decimal")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e8) == "1e+08");
    CHECK(format_double(-0.0) == "-0");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
