#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "glab/search.hpp"

using namespace glab;

namespace {

std::vector<std::uint64_t> spread(std::uint64_t n, std::uint64_t t) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t i = 0; i < t; ++i) v.push_back((i * 7919 + 13) % n);
    return v;
}

double critical_m(std::uint64_t n, std::uint64_t t) {
    return critical_scale(make_shape(static_cast<std::int64_t>(n), static_cast<std::int64_t>(t)));
}

}  // namespace

TEST_CASE("known t on a quarter-full table always succeeds") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        OracleSpec o(4, {1});
        Rng rng(seed);
        const SearchOutcome out = search_known_t(o, 1, rng);
        REQUIRE(out.success);
        REQUIRE(out.found_index == 1u);
        REQUIRE(out.grover_iterations_used == 1);
        REQUIRE(out.oracle_lookups_used == 3);
        REQUIRE(o.query_count() == out.oracle_lookups_used);
    }
    OracleSpec none(8, {});
    Rng rng(1);
    CHECK_THROWS_AS(search_known_t(none, 0, rng), std::domain_error);
}

TEST_CASE("known t success rate") {
    int hits = 0;
    const int trials = 400;
    for (int s = 0; s < trials; ++s) {
        OracleSpec o(1024, {77});
        Rng rng(Rng::substream(9, s));
        hits += search_known_t(o, 1, rng).success;
    }
    const double p = success_probability(make_shape(1024, 1), 25);
    CHECK(hits >= trials * p - 3 * std::sqrt(trials * p * (1 - p)) - 1);
}

TEST_CASE("outcomes are deterministic in the seed") {
    OracleSpec a(2048, spread(2048, 3)), b(2048, spread(2048, 3));
    Rng r1(42), r2(42);
    const auto cfg = UnknownTConfig::defaults(2048);
    CHECK(search_unknown_t(a, cfg, r1) == search_unknown_t(b, cfg, r2));
}

TEST_CASE("lookup accounting identity") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::uint64_t t = seed % 5;
        OracleSpec o(512, spread(512, t));
        Rng rng(seed);
        const SearchOutcome out = search_unknown_t(o, UnknownTConfig::defaults(512), rng);
        REQUIRE(out.oracle_lookups_used == 2 * out.grover_iterations_used + out.classical_probes_used);
        REQUIRE(o.query_count() == out.oracle_lookups_used);
        if (out.success) REQUIRE(o.contains(*out.found_index));
        if (t == 0) REQUIRE_FALSE(out.success);
        if (t > 0 && out.success) {
            OracleSpec r(512, spread(512, t));
            Rng rr(seed);
            const SearchOutcome restart = search_restart_optimal(r, t, rr);
            REQUIRE(restart.oracle_lookups_used == 2 * restart.grover_iterations_used + restart.classical_probes_used);
        }
    }
}

TEST_CASE("unknown t configuration") {
    const UnknownTConfig c = UnknownTConfig::defaults(1 << 16);
    CHECK(c.lambda == doctest::Approx(1.2));
    CHECK(c.m_cap == 256.0);
    CHECK(c.timeout_total_iterations == 1152);
    CHECK(c.classical_presample_count == 10);
    UnknownTConfig bad = c;
    bad.lambda = 4.0 / 3.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.lambda = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("unknown t: empty tables time out without a false positive") {
    for (std::uint64_t n : {1u, 2u, 100u, 4096u}) {
        for (int s = 0; s < 20; ++s) {
            OracleSpec o(n, {});
            Rng rng(Rng::substream(n, s));
            const auto cfg = UnknownTConfig::defaults(n);
            const SearchOutcome out = search_unknown_t(o, cfg, rng);
            REQUIRE_FALSE(out.success);
            REQUIRE_FALSE(out.found_index.has_value());
            REQUIRE(out.grover_iterations_used <= cfg.timeout_total_iterations);
        }
    }
}

TEST_CASE("unknown t: dense tables finish in the classical phase") {
    int classical_only = 0;
    for (int s = 0; s < 200; ++s) {
        OracleSpec o(100, spread(100, 90));
        Rng rng(s);
        const SearchOutcome out = search_unknown_t(o, UnknownTConfig::defaults(100), rng);
        REQUIRE(out.success);
        classical_only += out.grover_iterations_used == 0 && out.rounds == 0;
    }
    CHECK(classical_only == 200);
}

TEST_CASE("unknown t: rounds before the critical stage") {
    const std::uint64_t n = 1 << 14;
    for (std::uint64_t t : {1u, 4u, 16u}) {
        const double m0 = critical_m(n, t);
        const auto cfg = UnknownTConfig::defaults(n);
        const auto bound = static_cast<std::size_t>(std::ceil(std::log(m0) / std::log(cfg.lambda)));
        for (int s = 0; s < 50; ++s) {
            OracleSpec o(n, spread(n, t));
            Rng rng(Rng::substream(t, s));
            std::vector<RoundTrace> trace;
            search_unknown_t(o, cfg, rng, &trace);
            std::size_t below = 0;
            for (std::size_t r = 0; r < trace.size(); ++r) {
                REQUIRE(trace[r].iterations < static_cast<std::uint64_t>(std::ceil(trace[r].m)));
                REQUIRE(trace[r].m <= cfg.m_cap);
                if (r > 0) REQUIRE(trace[r].m >= trace[r - 1].m);
                below += trace[r].m < m0;
            }
            REQUIRE(below <= bound);
        }
    }
}

TEST_CASE("unknown t: expected cost stays within 4.5 m0") {
    const std::uint64_t n = 4096;
    for (std::uint64_t t : {1u, 3u, 20u}) {
        const int trials = 300;
        double total = 0;
        for (int s = 0; s < trials; ++s) {
            OracleSpec o(n, spread(n, t));
            Rng rng(Rng::substream(1000 + t, s));
            const SearchOutcome out = search_unknown_t(o, UnknownTConfig::defaults(n), rng);
            total += static_cast<double>(out.grover_iterations_used);
        }
        CHECK(total / trials <= 4.5 * critical_m(n, t));
    }
}

TEST_CASE("restart at the stopping optimum") {
    SUBCASE("large table, subspace backend") {
        const std::uint64_t n = 1 << 20;
        const int trials = 2000;
        double total = 0;
        for (int s = 0; s < trials; ++s) {
            OracleSpec o(n, {123456});
            Rng rng(Rng::substream(77, s));
            const SearchOutcome out = search_restart_optimal(o, 1, rng, kDefaultMaxRestarts, {Backend::subspace});
            REQUIRE(out.success);
            REQUIRE(out.grover_iterations_used % 596 == 0);
            total += static_cast<double>(out.grover_iterations_used);
        }
        CHECK(std::abs(total / trials - 706.0) <= 0.05 * 706.0);
    }
    SUBCASE("statevector backend matches the asymptotic ratio") {
        const std::uint64_t n = 4096;
        const int trials = 3000;
        double total = 0;
        for (int s = 0; s < trials; ++s) {
            OracleSpec o(n, {4000});
            Rng rng(Rng::substream(78, s));
            total += static_cast<double>(search_restart_optimal(o, 1, rng).grover_iterations_used);
        }
        CHECK(std::abs(total / trials / 64.0 - 0.69003) <= 0.03 * 0.69003);
    }
    SUBCASE("restart cap") {
        OracleSpec o(1 << 10, {5});
        Rng rng(3);
        const SearchOutcome out = search_restart_optimal(o, 1, rng, 0);
        CHECK(out.rounds == 1);
    }
}

TEST_CASE("restart cost scales with sqrt(N/t)") {
    std::vector<double> ratios;
    for (auto [n, t] : {std::pair<std::uint64_t, std::uint64_t>{1 << 12, 1}, {1 << 14, 4}, {1 << 16, 1}, {1 << 18, 16}}) {
        const int trials = 1000;
        double total = 0;
        for (int s = 0; s < trials; ++s) {
            OracleSpec o(n, spread(n, t));
            Rng rng(Rng::substream(n + t, s));
            total += static_cast<double>(
                search_restart_optimal(o, t, rng, kDefaultMaxRestarts, {Backend::subspace}).grover_iterations_used);
        }
        ratios.push_back(total / trials / std::sqrt(static_cast<double>(n) / t));
    }
    for (double r : ratios) CHECK(std::abs(r - 0.69003) <= 0.2 * 0.69003);
}

TEST_CASE("averaged success Monte Carlo") {
    Rng rng(8);
    const ProblemShape s = make_shape(16, 1);
    const double p = averaged_success(s, 4);
    const std::uint64_t trials = 100000;
    CHECK(std::abs(average_success_check(s, 4, rng, trials) - p) <= 4 * std::sqrt(p * (1 - p) / trials));
    CHECK_THROWS_AS(average_success_check(make_shape(16, 0), 4, rng, 10), std::domain_error);
    CHECK_THROWS_AS(average_success_check(s, 0, rng, 10), std::invalid_argument);
}
