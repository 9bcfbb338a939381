#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "glab/config.hpp"
#include "glab/counting.hpp"
#include "glab/fft.hpp"
#include "oracles.hpp"

using namespace glab;

namespace {

std::uint64_t folded_argmax(const std::vector<double>& spec) {
    std::uint64_t best = 0;
    for (std::uint64_t v = 1; v < spec.size(); ++v)
        if (spec[v] > spec[best]) best = v;
    return std::min<std::uint64_t>(best, spec.size() - best);
}

}  // namespace

TEST_CASE("regime names") {
    CHECK(parse_regime("exact") == Regime::exact);
    CHECK(to_string(Regime::relative) == "relative");
    CHECK(to_string(Branch::non_solution) == "non-solution");
    CHECK_THROWS_AS(parse_regime("loose"), std::invalid_argument);
}

TEST_CASE("j-register construction") {
    const JRegister reg = build_j_register(make_shape(4, 1), 8, Branch::solution);
    double norm = 0;
    for (std::uint64_t j = 0; j < 8; ++j) {
        const double expect = std::sin((2.0 * j + 1) * kPi / 6) / std::sqrt(4.25);
        CHECK(std::abs(reg.amplitudes[j] - cplx(expect)) < 1e-12);
        norm += std::norm(reg.amplitudes[j]);
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);

    const JRegister flat = build_j_register(make_shape(32, 0), 16, Branch::non_solution);
    for (const cplx& a : flat.amplitudes) CHECK(std::abs(a - 0.25) < 1e-12);

    CHECK_THROWS_AS(build_j_register(make_shape(32, 0), 16, Branch::solution), std::invalid_argument);
    CHECK_THROWS_AS(build_j_register(make_shape(32, 32), 16, Branch::non_solution), std::invalid_argument);
    CHECK_THROWS_AS(build_j_register(make_shape(32, 3), 12, Branch::solution), std::invalid_argument);
    CHECK_THROWS_AS(build_j_register(make_shape(32, 3), 1, Branch::solution), std::invalid_argument);

    Rng rng(1);
    CHECK(build_j_register(make_shape(32, 0), 8, rng).branch == Branch::non_solution);
    CHECK(build_j_register(make_shape(32, 32), 8, rng).branch == Branch::solution);

    for (std::uint64_t n : {5u, 64u, 1000u})
        for (std::uint64_t t = 1; t < n; t += n / 5 + 1)
            for (Branch b : {Branch::solution, Branch::non_solution}) {
                double s = 0;
                for (const cplx& a : build_j_register(make_shape(n, t), 32, b).amplitudes) s += std::norm(a);
                REQUIRE(std::abs(s - 1.0) < 1e-12);
            }
}

TEST_CASE("branch probability") {
    // Frozen: mean of sin^2((2j+1) pi/6) over j < 8 and j < 64.
    CHECK(solution_branch_probability(make_shape(4, 1), 8) == doctest::Approx(0.53125).epsilon(1e-14));
    CHECK(solution_branch_probability(make_shape(4, 1), 64) == doctest::Approx(0.49609375).epsilon(1e-14));

    Rng rng(4);
    int solution = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) solution += build_j_register(make_shape(4, 1), 8, rng).branch == Branch::solution;
    CHECK(std::abs(solution / double(draws) - 0.53125) < 4 * std::sqrt(0.25 / draws));
}

TEST_CASE("dft of the j-register") {
    JRegister reg{4, Branch::solution, {1.0, 0.0, 0.0, 0.0}};
    const JRegister out = dft(reg);
    for (const cplx& b : out.amplitudes) CHECK(std::abs(b - 0.5) < 1e-15);

    const JRegister r = build_j_register(make_shape(50, 7), 32, Branch::non_solution);
    const std::vector<cplx> expect = oracle::naive_dft(r.amplitudes, +1);
    const JRegister got = dft(r);
    for (std::size_t v = 0; v < expect.size(); ++v) REQUIRE(std::abs(got.amplitudes[v] - expect[v]) < 1e-12);

    reg.amplitudes.pop_back();
    CHECK_THROWS_AS(dft(reg), std::invalid_argument);
}

TEST_CASE("spectrum concentrates near f") {
    const ProblemShape s = make_shape(64, 16);
    CHECK(true_frequency(s, 64) == doctest::Approx(32.0 / 3));
    const std::vector<double> spec = spectrum(s, 64, Branch::solution);
    // Frozen from a numpy FFT of the same register.
    CHECK(spec[10] + spec[11] + spec[53] + spec[54] == doctest::Approx(0.8559874800051952).epsilon(1e-10));
    const std::vector<double> other = spectrum(s, 64, Branch::non_solution);
    CHECK(other[10] + other[11] + other[53] + other[54] == doctest::Approx(0.8550461529826696).epsilon(1e-10));

    Rng rng(10);
    int near = 0;
    const int runs = 2000;
    for (int i = 0; i < runs; ++i) {
        const CountingEstimate e = estimate_t(s, 64, rng);
        near += e.f_tilde == 10 || e.f_tilde == 11;
        REQUIRE(e.f_tilde == static_cast<double>(std::min(e.measured_frequency, 64 - e.measured_frequency)));
        REQUIRE(e.total_work == 64);
    }
    CHECK(near >= 0.8 * runs);
}

TEST_CASE("both branches peak within one bin of f") {
    // Leakage can split the two peaks across neighbouring bins; neither
    // strays further than one bin from the true frequency.
    for (std::uint64_t n = 2; n <= 64; ++n) {
        for (std::uint64_t t = 1; t < n; ++t) {
            const ProblemShape s = make_shape(static_cast<std::int64_t>(n), static_cast<std::int64_t>(t));
            for (std::uint64_t P = 2; P <= 256; P *= 2) {
                const double f = true_frequency(s, P);
                const auto a = static_cast<double>(folded_argmax(spectrum(s, P, Branch::solution)));
                const auto b = static_cast<double>(folded_argmax(spectrum(s, P, Branch::non_solution)));
                REQUIRE(std::abs(a - f) < 1.0);
                REQUIRE(std::abs(b - f) < 1.0);
                REQUIRE(std::abs(a - b) <= 1.0);
            }
        }
    }
}

TEST_CASE("estimates") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const CountingEstimate e = estimate_t(make_shape(1024, 0), 64, rng);
        REQUIRE(e.t_tilde == 0.0);
        REQUIRE(e.t_rounded == 0);
        REQUIRE(e.branch == Branch::non_solution);
    }
    OracleSpec o(256, {1, 2, 3, 4});
    const CountingEstimate e = estimate_t(o, 128, rng);
    CHECK(e.P == 128);
    CHECK(o.query_count() == 0);
}

TEST_CASE("error bound") {
    CHECK(counting_error_bound(16, 1024, 1024) == doctest::Approx(0.795).epsilon(1e-3));
    CHECK(counting_error_bound(0, 1024, 32) == doctest::Approx(kPi * kPi));

    // Whenever the estimate lands within one bin, the bound holds with the true t.
    Rng rng(77);
    for (std::uint64_t t : {1u, 4u, 16u, 64u, 300u}) {
        const ProblemShape s = make_shape(1024, t);
        for (std::uint64_t P : {32u, 256u, 1024u}) {
            const double f = true_frequency(s, P);
            for (int r = 0; r < 100; ++r) {
                const CountingEstimate e = estimate_t(s, P, rng);
                if (std::abs(f - e.f_tilde) < 1.0)
                    REQUIRE(std::abs(static_cast<double>(t) - e.t_tilde) <
                            counting_error_bound(static_cast<double>(t), 1024, P) + 1e-12);
            }
        }
    }
}

TEST_CASE("regimes") {
    Rng rng(5);
    const ProblemShape s = make_shape(1024, 4);

    SUBCASE("fixed") {
        const double c = 3.0;
        for (int r = 0; r < 100; ++r) {
            const CountingEstimate e = count_with_regime(s, Regime::fixed, c, rng);
            REQUIRE(e.P == 128);
            REQUIRE(e.regime == Regime::fixed);
            REQUIRE(e.error_bound <= 2 * kPi / c * std::sqrt(e.t_tilde) + kPi * kPi / (c * c) + 1e-12);
        }
    }
    SUBCASE("relative") {
        const ProblemShape big = make_shape(1 << 14, 64);
        const double c = 8.0;
        int within = 0;
        const int runs = 200;
        for (int r = 0; r < runs; ++r) {
            const CountingEstimate e = count_with_regime(big, Regime::relative, c, rng);
            REQUIRE(glab::fft::is_power_of_two(e.P));
            const double factor = std::pow(1 + kPi / c, 2);
            within += e.t_tilde <= 64 * factor && e.t_tilde >= 64 / factor;
            REQUIRE(e.total_work == 2 * e.P - 2);
        }
        CHECK(within >= 0.9 * runs);
    }
    SUBCASE("relative with no solutions stops at the cap") {
        const CountingEstimate e = count_with_regime(make_shape(1024, 0), Regime::relative, 4.0, rng);
        CHECK(e.t_tilde == 0.0);
        CHECK(e.P == 2 * glab::fft::next_power_of_two(static_cast<std::uint64_t>(std::ceil(4.0 * kPi * 32))));
    }
    SUBCASE("exact") {
        CHECK_THROWS_AS(count_with_regime(s, Regime::exact, 13.9, rng), std::invalid_argument);
        CHECK_THROWS_AS(count_with_regime(s, Regime::fixed, 0.0, rng), std::invalid_argument);
        for (std::uint64_t t : {1u, 4u, 16u, 64u, 200u}) {
            const ProblemShape shape = make_shape(1024, t);
            int within = 0;
            for (int r = 0; r < 500; ++r) {
                const CountingEstimate e = count_with_regime(shape, Regime::exact, 14.0, rng);
                REQUIRE(e.P >= 512);
                if (std::abs(true_frequency(shape, e.P) - e.f_tilde) < 1.0) {
                    ++within;
                    REQUIRE(e.t_rounded == static_cast<std::int64_t>(t));
                }
            }
            MESSAGE("exact regime t=" << t << ": within one bin in " << within << "/500 runs");
            CHECK(within > 250);
        }
    }
}

TEST_CASE("closed-form register matches the full joint state") {
    CHECK(joint_state_crosscheck(make_shape(8, 1), 16, Branch::solution).ok);
    CHECK(joint_state_crosscheck(make_shape(8, 0), 16, Branch::non_solution).ok);
    CHECK(joint_state_crosscheck(make_shape(16, 4), 32, Branch::solution).ok);
    CHECK(joint_state_crosscheck(make_shape(16, 4), 32, Branch::non_solution).ok);
    for (std::uint64_t n : {3u, 6u, 11u, 40u, 64u})
        for (std::uint64_t t = 1; t < n; t += 3)
            for (Branch b : {Branch::solution, Branch::non_solution}) {
                const JointCheck c = joint_state_crosscheck(make_shape(n, t), 64, b);
                REQUIRE(c.ok);
            }
    CHECK_THROWS_AS(joint_state_crosscheck(make_shape(128, 1), 16, Branch::solution), std::invalid_argument);
    CHECK_THROWS_AS(joint_state_crosscheck(make_shape(8, 0), 16, Branch::solution), std::invalid_argument);
}
