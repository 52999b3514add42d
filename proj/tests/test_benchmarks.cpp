#include <doctest.h>

#include <cmath>

#include "emopt/benchmarks.hpp"

using namespace emopt;
using bench::BenchmarkEntry;

namespace {

Vector random_point(const SearchSpace& s, RngStream& rng) {
    Vector x(s.dims());
    for (std::size_t d = 0; d < s.dims(); ++d)
        x[d] = std::min(s.lower(d) + rng.uniform() * s.width(d), s.upper(d));
    return x;
}

}  // namespace

TEST_SUITE("benchmarks") {

TEST_CASE("registry layout") {
    const auto& r = bench::registry();
    REQUIRE(r.size() == 14);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i].id == "f" + std::to_string(i + 1));

    const std::size_t dims[] = {2, 2, 2, 3, 6, 4, 4, 4, 2, 30, 30, 30, 30, 30};
    for (std::size_t i = 0; i < 14; ++i) CHECK(r[i].dims() == dims[i]);

    const auto& f10 = bench::get("f10");
    CHECK(f10.space.lower() == Vector(30, -5.12));
    CHECK(f10.space.upper() == Vector(30, 5.12));
    for (const char* id : {"f13", "f14"}) {
        CHECK(bench::get(id).space.lower() == Vector(30, -50.0));
        CHECK(bench::get(id).space.upper() == Vector(30, 50.0));
    }
    CHECK(bench::get("f6").space.upper() == Vector(4, 10.0));
}

TEST_CASE("lookup by id or name") {
    CHECK(bench::find("BRANIN") == &bench::get("f1"));
    CHECK(bench::find("F12")->name == "griewank");
    CHECK(bench::find("nope") == nullptr);
    CHECK_THROWS_AS(bench::get("f15"), std::invalid_argument);
}

TEST_CASE("penalty term") {
    CHECK(bench::penalty_u(0.0, 10.0, 100.0, 4.0) == 0.0);
    CHECK(bench::penalty_u(11.0, 10.0, 100.0, 4.0) == 100.0);
    CHECK(bench::penalty_u(-11.0, 10.0, 100.0, 4.0) == 100.0);
    CHECK(bench::penalty_u(10.0, 10.0, 100.0, 4.0) == 0.0);
    CHECK(bench::penalty_u(-10.0, 10.0, 100.0, 4.0) == 0.0);
    CHECK(bench::penalty_u(7.0, 5.0, 100.0, 4.0) == 1600.0);
}

TEST_CASE("argmin reproduces the canonical minimum") {
    for (const auto& e : bench::registry()) {
        CAPTURE(e.id);
        REQUIRE(e.space.contains(e.argmin));
        CHECK(std::fabs(e.evaluator(e.argmin) - e.canonical_minimum) < 1e-4);
    }
}

TEST_CASE("canonical minima match published values except the documented one") {
    for (const auto& e : bench::registry()) {
        CAPTURE(e.id);
        if (e.documented_discrepancy)
            CHECK(std::fabs(e.canonical_minimum - e.reference_minimum) > 1e-3);
        else
            CHECK(std::fabs(e.canonical_minimum - e.reference_minimum) <= 1e-3);
    }
    CHECK(bench::get("f5").documented_discrepancy.has_value());
}

TEST_CASE("known function values") {
    CHECK(bench::goldstein_price(Vector{0.0, -1.0}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(bench::ackley(Vector(30, 0.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::fabs(bench::ackley(Vector(30, 0.0))) < 1e-14);
    CHECK(bench::griewank(Vector(30, 0.0)) == 0.0);
    CHECK(bench::penalized1(Vector(30, -1.0)) == doctest::Approx(0.0).scale(1.0));
    CHECK(std::fabs(bench::penalized2(Vector(30, 1.0))) < 1e-25);
    CHECK(bench::six_hump_camel(Vector{0.0898, -0.7126}) == doctest::Approx(-1.0316).epsilon(1e-4));
}

TEST_CASE("even functions are symmetric and nonnegative") {
    RngStream rng(31);
    for (const char* id : {"f10", "f11", "f12"}) {
        const auto& e = bench::get(id);
        for (int t = 0; t < 2000; ++t) {
            Vector x = random_point(e.space, rng);
            Vector neg = x;
            for (auto& v : neg) v = -v;
            const double f = e.evaluator(x);
            REQUIRE(f == e.evaluator(neg));
            REQUIRE(f >= 0.0);
        }
    }
}

TEST_CASE("rastrigin is a sum of per-coordinate terms") {
    RngStream rng(8);
    const auto& s = bench::get("f10").space;
    for (int t = 0; t < 200; ++t) {
        const Vector x = random_point(s, rng);
        double sum = 0.0;
        for (double v : x) sum += bench::rastrigin(Vector{v});
        REQUIRE(bench::rastrigin(x) == doctest::Approx(sum).epsilon(1e-12));
    }
    CHECK(bench::rastrigin(Vector{0.0}) == 0.0);
}

TEST_CASE("shekel is monotone in the number of terms") {
    RngStream rng(77);
    const auto s = SearchSpace::uniform(4, 0.0, 10.0);
    for (int t = 0; t < 5000; ++t) {
        const Vector x = random_point(s, rng);
        const double f5 = bench::shekel(x, 5), f7 = bench::shekel(x, 7), f10 = bench::shekel(x, 10);
        REQUIRE(f10 <= f7);
        REQUIRE(f7 <= f5);
    }
}

TEST_CASE("oracle finds two-dimensional minima") {
    for (const char* id : {"f1", "f2", "f3", "f9"}) {
        const auto r = bench::oracle_minimum(bench::get(id), 200000);
        CAPTURE(id);
        CHECK(r.reaches_canonical);
        CHECK_FALSE(r.flagged);
        CHECK(r.evaluations <= 200000);
    }
    const auto f3 = bench::oracle_minimum(bench::get("f3"), 200000);
    CHECK(f3.oracle_minimum == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(f3.oracle_argmin[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-3));
    CHECK(f3.oracle_argmin[1] == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("oracle flags a broken registry entry") {
    // Ackley without the +e term bottoms out at -e instead of 0.
    BenchmarkEntry broken{"fx", "broken_ackley", "Broken Ackley", SearchSpace::uniform(2, -32.0, 32.0),
                          [](std::span<const double> x) { return bench::ackley(x) - std::exp(1.0); },
                          0.0, 0.0, Vector(2, 0.0), std::nullopt};
    const auto r = bench::oracle_minimum(broken, 100000);
    CHECK(r.flagged);
    CHECK_FALSE(r.reaches_canonical);
    CHECK(r.oracle_minimum == doctest::Approx(-std::exp(1.0)).epsilon(1e-6));

    CHECK_THROWS_AS(bench::oracle_minimum(bench::get("f1"), 100), std::invalid_argument);
}

TEST_CASE("documented discrepancy is reported rather than failed") {
    const auto r = bench::oracle_minimum(bench::get("f5"), 200000);
    CHECK(r.reaches_canonical);
    CHECK_FALSE(r.matches_reference);
    CHECK(r.discrepancy_documented);
    CHECK_FALSE(r.flagged);
}

}
