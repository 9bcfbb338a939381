#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "glab/analytics.hpp"
#include "glab/bounds.hpp"

using namespace glab;

TEST_CASE("lower bound values") {
    CHECK(lower_bound_unique(1) == 0);
    CHECK(lower_bound_unique(64) == 3);
    CHECK(lower_bound_unique(1 << 20) == 391);
    CHECK(lower_bound_multi(1 << 20, 4) == 195);
    CHECK(lower_bound_multi(100, 100) == 0);
    for (std::uint64_t n = 1; n < 5000; n += 37) CHECK(lower_bound_multi(n, 1) == lower_bound_unique(n));
    CHECK_THROWS_AS(lower_bound_multi(10, 0), std::domain_error);
    CHECK_THROWS_AS(lower_bound_multi(10, 11), std::domain_error);
}

TEST_CASE("iterations for half") {
    CHECK(iterations_for_half(4, 1) == 1);
    CHECK(iterations_for_half(2, 1) == 0);
    for (std::uint64_t n : {7u, 100u, 4096u, 1u << 20}) {
        for (std::uint64_t t : {1u, 2u, 5u}) {
            if (t > n) continue;
            const ProblemShape s = make_shape(static_cast<std::int64_t>(n), static_cast<std::int64_t>(t));
            const std::uint64_t j = iterations_for_half(n, t);
            REQUIRE(success_probability(s, j) >= 0.5);
            if (j > 0) REQUIRE(success_probability(s, j - 1) < 0.5);
        }
    }
    CHECK_THROWS_AS(iterations_for_half(8, 0), std::domain_error);
}

TEST_CASE("grover versus the bound") {
    const BoundReport r = compare_grover_to_bound(1 << 20, 1);
    CHECK(r.lower_bound_queries == 391);
    CHECK_FALSE(r.degenerate);
    CHECK(std::abs(r.ratio - 2.05) <= 0.05);
    CHECK(asymptotic_ratio() == doctest::Approx(2.0524).epsilon(1e-4));

    const BoundReport d = compare_grover_to_bound(1, 1);
    CHECK(d.degenerate);
    CHECK(d.ratio == std::numeric_limits<double>::infinity());

    // Grover never beats the bound, and the ratio approaches the limit. The
    // floors make the approach ragged, with error of order 1 / bound.
    auto dist = [](std::uint64_t n) { return std::abs(compare_grover_to_bound(n, 1).ratio - asymptotic_ratio()); };
    CHECK(dist(1 << 20) <= dist(1 << 10));
    CHECK(dist(std::uint64_t{1} << 30) <= 1e-3);
    for (int e = 6; e <= 30; e += 2) {
        const BoundReport b = compare_grover_to_bound(std::uint64_t{1} << e, 1);
        REQUIRE(b.grover_queries_50pct >= static_cast<double>(b.lower_bound_queries));
        REQUIRE(dist(b.N) <= 3.0 * asymptotic_ratio() / static_cast<double>(b.lower_bound_queries));
    }
    for (std::uint64_t n = 1; n <= 3000; ++n)
        for (std::uint64_t t : {1u, 2u, 3u, 10u})
            if (t <= n) {
                const BoundReport b = compare_grover_to_bound(n, t);
                REQUIRE(b.grover_queries_50pct >= static_cast<double>(b.lower_bound_queries));
            }
}

TEST_CASE("propositions") {
    Rng rng(2024);
    const PropositionReport p = proposition_checks(rng, 10000);
    CHECK(p.ok);
    CHECK(p.instances == 10000);
    CHECK(p.worst_prop1_gap >= -1e-9);
    CHECK(p.worst_prop2_gap >= -1e-9);
}
