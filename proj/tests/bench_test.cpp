#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crpinv/bench.hpp"
#include "crpinv/errors.hpp"
#include "crpinv/svd.hpp"
#include "oracles.hpp"

using namespace crpinv;

TEST_CASE("randsvd with condition 1 is orthogonal")
{
    const FloatMatrix a = gen_randsvd({12, 1.0, SingularValueProfile::Geometric, 3});
    CHECK(oracle::norm(FloatMatrix(a.transpose() * a - FloatMatrix::identity(12))) <= 1e-12);
}

TEST_CASE("randsvd hits the requested condition number")
{
    const FloatMatrix a = gen_randsvd({10, 1e8, SingularValueProfile::Geometric, 11});
    const auto s = svd(a);
    const double cond = s.singular_values.front() / s.singular_values.back();
    CHECK(std::fabs(cond / 1e8 - 1.0) <= 0.01);
    CHECK(s.singular_values.front() == doctest::Approx(1.0).epsilon(1e-12));

    const auto sigma = randsvd_singular_values({5, 16.0, SingularValueProfile::Geometric, 0});
    CHECK(sigma == std::vector<double>{1.0, 0.5, 0.25, 0.125, 0.0625});
}

TEST_CASE("randsvd is deterministic and validates its input")
{
    const RandSvdSpec spec{8, 100.0, SingularValueProfile::Geometric, 5};
    CHECK(gen_randsvd(spec) == gen_randsvd(spec));
    CHECK_FALSE(gen_randsvd(spec) == gen_randsvd({8, 100.0, SingularValueProfile::Geometric, 6}));
    CHECK_THROWS_AS(gen_randsvd({1, 1.0, SingularValueProfile::Geometric, 0}), std::invalid_argument);
    CHECK_THROWS_AS(gen_randsvd({4, 0.5, SingularValueProfile::Geometric, 0}), std::invalid_argument);
}

TEST_CASE("sketch sizes round up")
{
    CHECK(sketch_size(0.4, 100) == 40);
    CHECK(sketch_size(0.1, 300) == 30);
    CHECK(sketch_size(0.4, 101) == 41);
    CHECK(sketch_size(0.01, 10) == 1);
    CHECK(sketch_size(1.0, 7) == 7);
}

TEST_CASE("cost model crossover sits at (sqrt(3) - 1) / 2")
{
    // For square A with p = q = alpha n, rpinv / direct = 2 alpha + 2 alpha^2.
    const double crossover = (std::sqrt(3.0) - 1.0) / 2.0;
    for (std::size_t n : {100, 200, 400, 1000})
        for (double alpha = 0.01; alpha < 1.0; alpha += 0.01) {
            const std::size_t p = sketch_size(alpha, n);
            const double ratio = rpinv_cost(n, n, p, p) / direct_cost(n, n);
            const double f = static_cast<double>(p) / static_cast<double>(n);
            CHECK(ratio == doctest::Approx(2 * f + 2 * f * f));
            if (f < crossover - 1e-12)
                CHECK(ratio < 1.0);
            if (f > crossover + 1e-12)
                CHECK(ratio > 1.0);
        }
    CHECK(rpinv_cost(10, 20, 3, 4) == 3 * 200 + 4 * 200 + 3 * 3 * 20 + 4 * 10 * 4);
    CHECK(direct_cost(10, 20) == 10 * 10 * 20);
}

TEST_CASE("bench config validation")
{
    BenchConfig c;
    CHECK_NOTHROW(c.validate());
    c.alpha = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.alpha = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = BenchConfig{};
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = BenchConfig{};
    c.sizes = {1};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = BenchConfig{};
    c.methods.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(parse_bench_method("rsvd") == BenchMethod::Rsvd);
    CHECK_THROWS_AS(parse_bench_method("qr"), std::invalid_argument);
}

TEST_CASE("direct method scores zero error")
{
    BenchConfig c;
    c.sizes = {20, 30};
    c.trials = 2;
    c.methods = {BenchMethod::Direct};
    const auto records = run_bench(c);
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        CHECK(r.method == "direct");
        CHECK(r.relative_error == 0.0);
        CHECK(r.wall_time_seconds > 0.0);
        CHECK_FALSE(r.rank_preserving.has_value());
    }
}

TEST_CASE("full sketches at alpha = 1 reproduce A+")
{
    BenchConfig c;
    c.sizes = {50};
    c.alpha = 1.0;
    c.condition = 10.0;
    c.trials = 5;
    c.methods = {BenchMethod::Rpinv};
    for (const auto& r : run_bench(c)) {
        CHECK(r.relative_error <= 1e-6);
        CHECK(r.rank_preserving == std::optional<bool>(true));
    }
}

TEST_CASE("small sketches give finite errors; records sorted by method, n, trial")
{
    BenchConfig c;
    c.sizes = {100};
    c.alpha = 0.1;
    c.condition = 1e8;
    c.trials = 2;
    const auto records = run_bench(c);
    REQUIRE(records.size() == 6);
    for (const auto& r : records) {
        CHECK(std::isfinite(r.relative_error));
        CHECK(r.relative_error >= 0.0);
        CHECK_FALSE(r.failed);
    }
    CHECK(records[0].method == "direct");
    CHECK(records[2].method == "rpinv");
    CHECK(records[4].method == "rsvd");
    CHECK(records[3].trial == 1);
}

TEST_CASE("bench output is reproducible apart from timings")
{
    BenchConfig c;
    c.sizes = {30};
    c.alpha = 0.4;
    c.trials = 2;
    auto a = run_bench(c);
    auto b = run_bench(c);
    for (auto* v : {&a, &b})
        for (auto& r : *v)
            r.wall_time_seconds = 0.0;
    CHECK(a == b);
}

TEST_CASE("CSV emission and parsing")
{
    std::vector<BenchRecord> recs{
        {"direct", 100, 0.4, 0, 0.0123456789, 0.0, std::nullopt, false},
        {"rpinv", 100, 0.4, 0, 1e-9, 1.0 / 3.0, true, false},
        {"rsvd", 200, 0.1, 3, 2.5, 7e-17, std::nullopt, false},
    };
    std::stringstream ss;
    write_csv(ss, recs);
    std::string text = ss.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.substr(0, text.find('\n')) == bench_csv_header);
    CHECK(read_csv(ss) == recs);

    std::stringstream empty;
    write_csv(empty, {});
    CHECK(empty.str() == std::string(bench_csv_header) + "\n");

    const auto dir = std::filesystem::temp_directory_path() / "crpinv_bench_test";
    std::filesystem::create_directories(dir);
    emit_csv(recs, dir / "r.csv");
    CHECK(parse_csv(dir / "r.csv") == recs);
    CHECK_THROWS_AS(emit_csv(recs, dir / "no" / "such" / "dir.csv"), std::runtime_error);
    try {
        emit_csv(recs, dir / "no" / "such" / "dir.csv");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("dir.csv") != std::string::npos);
    }
    std::filesystem::remove_all(dir);

    std::istringstream bad("method,n\nx\n");
    CHECK_THROWS_AS(read_csv(bad), ParseError);
}

TEST_CASE("failed cells round-trip as error rows")
{
    BenchRecord failed{"rpinv", 10, 0.5, 1, 0.5, std::nan(""), std::nullopt, true};
    std::stringstream ss;
    write_csv(ss, {failed});
    const auto back = read_csv(ss);
    REQUIRE(back.size() == 1);
    CHECK(back[0].failed);
    CHECK(std::isnan(back[0].relative_error));
}

TEST_CASE("summaries take medians per method and size")
{
    std::vector<BenchRecord> recs{
        {"rpinv", 10, 0.4, 0, 3.0, 0.3, true, false},
        {"rpinv", 10, 0.4, 1, 1.0, 0.1, true, false},
        {"rpinv", 10, 0.4, 2, 2.0, 0.2, false, false},
        {"rpinv", 20, 0.4, 0, 5.0, 0.5, true, false},
        {"rpinv", 20, 0.4, 1, 9.0, std::nan(""), std::nullopt, true},
    };
    const auto s = summarize(recs);
    REQUIRE(s.size() == 2);
    CHECK(s[0].median_wall_time_seconds == 2.0);
    CHECK(s[0].median_relative_error == 0.2);
    CHECK(s[0].trials == 3);
    CHECK(s[1].median_wall_time_seconds == 5.0);
    CHECK(s[1].trials == 1);
}
