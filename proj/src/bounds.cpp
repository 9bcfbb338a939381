#include "glab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "glab/analytics.hpp"
#include "glab/config.hpp"

namespace glab {

namespace {

const double kSinPiOver8 = std::sin(kPi / 8.0);

std::uint64_t floor_scaled_root(std::uint64_t x) {
    return static_cast<std::uint64_t>(std::floor(kSinPiOver8 * std::sqrt(static_cast<double>(x))));
}

std::complex<double> random_complex(Rng& rng) { return {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0}; }

}  // namespace

std::uint64_t lower_bound_unique(std::uint64_t N) {
    if (N == 0) throw std::domain_error("N must be >= 1");
    return floor_scaled_root(N);
}

std::uint64_t lower_bound_multi(std::uint64_t N, std::uint64_t t) {
    if (t == 0) throw std::domain_error("lower_bound_multi: t must be >= 1");
    if (t > N) throw std::domain_error("lower_bound_multi: t must be <= N");
    return floor_scaled_root(N / t);
}

std::uint64_t iterations_for_half(std::uint64_t N, std::uint64_t t) {
    const ProblemShape shape = make_shape(static_cast<std::int64_t>(N), static_cast<std::int64_t>(t));
    if (shape.empty()) throw std::domain_error("iterations_for_half: t must be >= 1");
    // (2j+1) theta >= pi/4 on the rising branch; start from the real-valued
    // estimate and correct for rounding either way.
    auto j = static_cast<std::uint64_t>(std::max(0.0, std::floor((kPi / (4.0 * shape.theta) - 1.0) / 2.0)));
    while (j > 0 && success_probability(shape, j - 1) >= 0.5) --j;
    while (success_probability(shape, j) < 0.5) ++j;
    return j;
}

BoundReport compare_grover_to_bound(std::uint64_t N, std::uint64_t t) {
    BoundReport r;
    r.N = N;
    r.t = t;
    r.lower_bound_queries = lower_bound_multi(N, t);
    r.grover_queries_50pct = 2.0 * static_cast<double>(iterations_for_half(N, t));
    r.degenerate = r.lower_bound_queries == 0;
    r.ratio = r.degenerate ? std::numeric_limits<double>::infinity()
                           : r.grover_queries_50pct / static_cast<double>(r.lower_bound_queries);
    return r;
}

double asymptotic_ratio() { return (kPi / 4.0) / kSinPiOver8; }

PropositionReport proposition_checks(Rng& rng, std::uint64_t trials) {
    PropositionReport rep;
    rep.worst_prop1_gap = std::numeric_limits<double>::infinity();
    rep.worst_prop2_gap = std::numeric_limits<double>::infinity();
    const double slack = kTolerances.proposition_slack;

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const std::uint64_t dim = 1 + rng.below(64);

        std::vector<std::complex<double>> a(dim), b(dim);
        double na = 0.0, nb = 0.0;
        for (std::uint64_t i = 0; i < dim; ++i) {
            a[i] = random_complex(rng);
            b[i] = random_complex(rng);
            na += std::norm(a[i]);
            nb += std::norm(b[i]);
        }
        na = std::sqrt(na);
        nb = std::sqrt(nb);
        for (auto& x : a) x /= na;
        for (auto& x : b) x /= nb;
        // Every fourth instance uses b = a, the tight case.
        if (trial % 4 == 0) b = a;
        const std::complex<double> alpha = 3.0 * random_complex(rng);
        const std::complex<double> beta = 3.0 * random_complex(rng);

        double lhs1 = 0.0;
        for (std::uint64_t i = 0; i < dim; ++i) lhs1 += std::norm(alpha * a[i] - beta * b[i]);
        const double ma = std::abs(alpha), mb = std::abs(beta);
        const double rhs1 = ma * ma + mb * mb - 2.0 * ma * mb;
        // Scale-aware slack; |alpha|, |beta| are O(1).
        const double gap1 = lhs1 - rhs1;
        rep.worst_prop1_gap = std::min(rep.worst_prop1_gap, gap1);
        if (gap1 < -slack * std::max(1.0, ma * ma + mb * mb)) rep.ok = false;

        const std::uint64_t r = 1 + rng.below(64);
        double sum_abs = 0.0, sum_sq = 0.0;
        const bool equal = trial % 4 == 1;
        const std::complex<double> shared = random_complex(rng);
        for (std::uint64_t i = 0; i < r; ++i) {
            const std::complex<double> x = equal ? shared : random_complex(rng);
            sum_abs += std::abs(x);
            sum_sq += std::norm(x);
        }
        const double lhs2 = sum_abs * sum_abs;
        const double rhs2 = static_cast<double>(r) * sum_sq;
        const double gap2 = rhs2 - lhs2;
        rep.worst_prop2_gap = std::min(rep.worst_prop2_gap, gap2);
        if (gap2 < -slack * std::max(1.0, rhs2)) rep.ok = false;

        ++rep.instances;
    }
    return rep;
}

}  // namespace glab
