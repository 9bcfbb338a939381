#include <doctest.h>

#include <cmath>
#include <vector>

#include "glab/kernels.hpp"
#include "glab/rng.hpp"

using namespace glab;
using kernels::cplx;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    return v;
}

}  // namespace

TEST_CASE("scalar kernels") {
    std::vector<cplx> a{{1, 2}, {3, -1}, {0, 0.5}};
    CHECK(kernels::scalar::sum(a) == cplx(4, 1.5));
    CHECK(kernels::scalar::norm_squared(a) == doctest::Approx(1 + 4 + 9 + 1 + 0.25));
    kernels::scalar::reflect(a, cplx(1, 0));
    CHECK(a[0] == cplx(1, -2));
    CHECK(a[1] == cplx(-1, 1));
    kernels::scalar::scale(a, 2.0);
    CHECK(a[2] == cplx(4, -1));
}

TEST_CASE("active table is usable") {
    const auto& t = kernels::active();
    std::vector<cplx> a(9, cplx(1, 0));
    CHECK(t.sum(a) == cplx(9, 0));
    CHECK(kernels::name(t.level).size() > 0);
    CHECK(kernels::select(kernels::Level::scalar));
    CHECK(kernels::active().level == kernels::Level::scalar);
}

TEST_CASE("vector kernels match the scalar reference") {
    const kernels::Table* v = kernels::avx2_table();
    if (v == nullptr) {
        MESSAGE("AVX2 unavailable; scalar path only");
        return;
    }
    const auto& s = kernels::scalar_table();
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 1000u, 4099u}) {
        const auto a = random_vector(n, 100 + n);
        const cplx ss = s.sum(a), vs = v->sum(a);
        CHECK(std::abs(ss - vs) <= 1e-12 * (1 + n));
        CHECK(std::abs(s.norm_squared(a) - v->norm_squared(a)) <= 1e-12 * (1 + n));

        auto r1 = a, r2 = a;
        const cplx mean{0.3, -0.2};
        s.reflect(r1, mean);
        v->reflect(r2, mean);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(r1[i] - r2[i]) <= 1e-15);

        s.scale(r1, 1.7);
        v->scale(r2, 1.7);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(r1[i] - r2[i]) <= 1e-15);
    }
}
