#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "emopt/kernels.hpp"

using namespace emopt;

namespace {

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n) {
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(g);
    return v;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)); }

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar kernels on small inputs") {
    const auto& k = kernels::scalar_table();
    const double a[] = {1.0, 2.0, -3.0};
    const double b[] = {0.0, 4.0, 1.0};
    CHECK(k.squared_distance(a, b, 3) == 21.0);
    CHECK(k.squared_norm(a, 3) == 14.0);
    CHECK(k.max_abs(a, 3) == 3.0);
    double out[] = {1.0, 1.0, 1.0};
    k.accumulate_difference(out, a, b, 2.0, 3);
    CHECK(out[0] == 3.0);
    CHECK(out[1] == -3.0);
    CHECK(out[2] == -7.0);
    k.scale(out, 0.5, 3);
    CHECK(out[2] == -3.5);
    const double lo[] = {0.0, -1.0, -5.0}, hi[] = {1.0, 1.0, 5.0}, x[] = {0.3, 0.5, 2.0};
    double r[3];
    k.reflect(r, lo, hi, x, 3);
    CHECK(r[0] == doctest::Approx(0.7));
    CHECK(r[1] == -0.5);
    CHECK(r[2] == -2.0);
}

TEST_CASE("avx2 kernels match the scalar reference") {
    const auto* v = kernels::avx2_table();
    if (!v) {
        MESSAGE("AVX2 unavailable on this host; equivalence not exercised");
        return;
    }
    const auto& s = kernels::scalar_table();
    std::mt19937_64 g(11);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 17u, 30u, 31u, 100u}) {
        for (int rep = 0; rep < 50; ++rep) {
            auto a = random_vec(g, n), b = random_vec(g, n), c = random_vec(g, n);
            CHECK(close(v->squared_distance(a.data(), b.data(), n), s.squared_distance(a.data(), b.data(), n)));
            CHECK(close(v->squared_norm(a.data(), n), s.squared_norm(a.data(), n)));
            CHECK(v->max_abs(a.data(), n) == s.max_abs(a.data(), n));

            auto o1 = c, o2 = c;
            v->accumulate_difference(o1.data(), a.data(), b.data(), 0.37, n);
            s.accumulate_difference(o2.data(), a.data(), b.data(), 0.37, n);
            CHECK(o1 == o2);
            v->scale(o1.data(), 1.7, n);
            s.scale(o2.data(), 1.7, n);
            CHECK(o1 == o2);

            std::vector<double> lo(n), hi(n), x(n), r1(n), r2(n);
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = -std::fabs(a[i]) - 1.0;
                hi[i] = std::fabs(b[i]) + 1.0;
                x[i] = lo[i] + (hi[i] - lo[i]) * 0.3;
            }
            v->reflect(r1.data(), lo.data(), hi.data(), x.data(), n);
            s.reflect(r2.data(), lo.data(), hi.data(), x.data(), n);
            CHECK(r1 == r2);
        }
    }
}

TEST_CASE("active table is one of the known variants") {
    const auto& a = kernels::active();
    CHECK((a.name == kernels::scalar_table().name ||
           (kernels::avx2_table() && a.name == kernels::avx2_table()->name)));
}

}
