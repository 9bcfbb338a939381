#include "glab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "glab/analytics.hpp"
#include "glab/bounds.hpp"
#include "glab/config.hpp"
#include "glab/counting.hpp"
#include "glab/fft.hpp"
#include "glab/search.hpp"
#include "glab/simulator.hpp"
#include "glab/trials.hpp"

namespace glab {

namespace {

// Accumulates "key=value" fragments for the detail column.
class Detail {
public:
    template <typename T>
    Detail& add(const std::string& key, const T& value) {
        if (!first_) out_ << ' ';
        first_ = false;
        out_ << key << '=' << value;
        return *this;
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_ = [] {
        std::ostringstream s;
        s << std::setprecision(8);
        return s;
    }();
    bool first_ = true;
};

CriterionResult make(bool pass, const Detail& d) {
    CriterionResult r;
    r.pass = pass;
    r.detail = d.str();
    return r;
}

std::vector<std::uint64_t> random_subset(std::uint64_t n, std::uint64_t k, Rng& rng) {
    // Partial Fisher-Yates over [0, n).
    std::vector<std::uint64_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::uint64_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
    idx.resize(k);
    return idx;
}

// 1. floor(pi / 4 theta) at N = 2^20, t = 1.
CriterionResult iteration_count(std::uint64_t) {
    const std::uint64_t m = optimal_iterations(make_shape(1 << 20, 1));
    return make(m == 804, Detail().add("optimal_iterations", m).add("expected", 804));
}

// 2. Early stopping with restarts at N = 2^20, t = 1.
CriterionResult stopping_plan(std::uint64_t) {
    const StoppingPlan p = optimal_stopping(make_shape(1 << 20, 1));
    const bool pass = p.j_star == 596 && std::abs(p.success_prob - 0.8442) <= 1e-4 &&
                      std::abs(p.expected_iterations - 706.0) <= 0.5;
    return make(pass, Detail()
                          .add("j_star", p.j_star)
                          .add("success", p.success_prob)
                          .add("expected_iterations", p.expected_iterations));
}

// 3. Limit constants of the stopping rule.
CriterionResult constants(std::uint64_t) {
    const double z = z_constant();
    const double s2 = std::pow(std::sin(z / 2.0), 2);
    const double cost = z / (4.0 * s2);
    const double ratio_n = 1e8;
    const StoppingPlan p = optimal_stopping(make_shape(100000000, 1));
    const double j_ratio = static_cast<double>(p.j_star) / std::sqrt(ratio_n);
    const bool pass = std::abs(z - 2.33112) <= 1e-5 && std::abs(s2 - 0.84458) <= 1e-5 &&
                      std::abs(cost - 0.69003) <= 1e-5 && std::abs(j_ratio - 0.58278) <= 1e-3;
    return make(pass, Detail()
                          .add("z", z)
                          .add("sin2_half_z", s2)
                          .add("cost_constant", cost)
                          .add("j_star_over_sqrt_N_t", j_ratio));
}

// 4. t = N/4 succeeds with certainty after one iteration.
CriterionResult certainty(std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    bool counted = true;
    std::uint64_t cases = 0;
    for (std::uint64_t n = 4; n <= 1024; n += 4) {
        OracleSpec oracle(n, random_subset(n, n / 4, rng));
        const DiffusionOperator op = DiffusionOperator::natural(n);
        StateVector state = StateVector::uniform(n);
        grover_iterate(state, oracle, op);
        double p = 0.0;
        for (std::uint64_t i : oracle.solutions()) p += state.probability(i);
        worst = std::max(worst, std::abs(p - 1.0));
        counted = counted && oracle.query_count() == 2;
        ++cases;
    }
    return make(worst <= 1e-10 && counted,
                Detail().add("sizes", cases).add("max_abs_p_minus_1", worst).add("two_lookups", counted));
}

// 5. Failure after floor(pi / 4 theta) iterations is at most t/N.
CriterionResult failure_bound(std::uint64_t) {
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
    double worst_excess = -1.0;
    for (std::uint64_t n = 1; n <= 4096; ++n) {
        for (std::uint64_t t = 1; 4 * t <= 3 * n; ++t) {
            const ProblemShape s = make_shape(static_cast<std::int64_t>(n), static_cast<std::int64_t>(t));
            const double fail = 1.0 - success_probability(s, optimal_iterations(s));
            const double excess = fail - s.ratio();
            worst_excess = std::max(worst_excess, excess);
            if (excess > 1e-12) ++violations;
            ++cases;
        }
    }
    return make(violations == 0,
                Detail().add("cases", cases).add("violations", violations).add("max_fail_minus_t_over_N", worst_excess));
}

// 6. Over-iterating destroys the success probability.
CriterionResult non_monotonic(std::uint64_t) {
    const ProblemShape s = make_shape(1 << 20, 1);
    const auto j = static_cast<std::uint64_t>(std::llround(std::sqrt(2.0 * (1 << 20))));
    const double p = success_probability(s, j);
    return make(p <= 0.105, Detail().add("j", j).add("success", p).add("limit", 0.105));
}

// 7. Averaged success probability over a uniformly random iteration count.
CriterionResult averaged(std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    std::uint64_t guarded = 0;
    std::uint64_t below_quarter = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint64_t n = 2 + rng.below(2047);
        const std::uint64_t t = 1 + rng.below(n - 1);
        const std::uint64_t m = 1 + rng.below(500);
        const ProblemShape s = make_shape(static_cast<std::int64_t>(n), static_cast<std::int64_t>(t));
        const double analytic = averaged_success(s, m);
        double brute = 0.0;
        for (std::uint64_t j = 0; j < m; ++j) {
            const double x = std::sin((2.0 * static_cast<double>(j) + 1.0) * s.theta);
            brute += x * x;
        }
        brute /= static_cast<double>(m);
        worst = std::max(worst, std::abs(analytic - brute));
        if (static_cast<double>(m) >= 1.0 / std::sin(2.0 * s.theta)) {
            ++guarded;
            if (analytic < 0.25) ++below_quarter;
        }
    }
    return make(worst <= 1e-10 && below_quarter == 0, Detail()
                                                          .add("max_abs_error", worst)
                                                          .add("triples_with_m_ge_m0", guarded)
                                                          .add("below_quarter", below_quarter));
}

// 8. Unknown-t search cost, soundness and time-out.
CriterionResult unknown_t(std::uint64_t seed) {
    const std::uint64_t n = 1 << 16;
    Detail d;
    bool pass = true;
    const UnknownTConfig config = UnknownTConfig::defaults(n);

    for (std::uint64_t t : {1, 4, 16, 64}) {
        Rng placement(mix64(seed ^ t));
        const std::vector<std::uint64_t> marked = random_subset(n, t, placement);
        const auto outcomes = run_trials(1000, seed + t, [&](std::uint64_t, Rng& rng) {
            OracleSpec oracle(n, marked);
            return search_unknown_t(oracle, config, rng);
        });
        double mean = 0.0;
        std::uint64_t false_pos = 0;
        std::uint64_t found = 0;
        for (const SearchOutcome& o : outcomes) {
            mean += static_cast<double>(o.grover_iterations_used);
            if (o.success) {
                ++found;
                if (!o.found_index || std::find(marked.begin(), marked.end(), *o.found_index) == marked.end())
                    ++false_pos;
            }
        }
        mean /= static_cast<double>(outcomes.size());
        const double m0 = critical_scale(make_shape(n, static_cast<std::int64_t>(t)));
        const bool ok = mean <= 4.5 * m0 && false_pos == 0;
        pass = pass && ok;
        std::ostringstream tag;
        tag << "t" << t;
        d.add(tag.str() + ".mean_over_m0", mean / m0).add(tag.str() + ".found", found);
        if (false_pos) d.add(tag.str() + ".false_positives", false_pos);
    }

    const auto empty = run_trials(200, seed, [&](std::uint64_t, Rng& rng) {
        OracleSpec oracle(n, {});
        return search_unknown_t(oracle, config, rng);
    });
    std::uint64_t bad = 0;
    for (const SearchOutcome& o : empty)
        if (o.success || o.found_index || o.grover_iterations_used > config.timeout_total_iterations) ++bad;
    pass = pass && bad == 0;
    d.add("t0.trials", empty.size()).add("t0.bad", bad).add("timeout", config.timeout_total_iterations);
    return make(pass, d);
}

// 9. Statevector simulation equals the closed form; diffusion routes agree.
CriterionResult simulator_equivalence(std::uint64_t seed) {
    Rng rng(seed);
    double closed_err = 0.0;
    double route_err = 0.0;
    std::uint64_t non_pow2 = 0;
    std::uint64_t wh_cases = 0;
    for (int c = 0; c < 200; ++c) {
        // Every fourth case is a power of two so Walsh-Hadamard is exercised.
        const std::uint64_t n = c % 4 == 0 ? (std::uint64_t{1} << (1 + rng.below(12))) : 2 + rng.below(4095);
        const std::uint64_t t = 1 + rng.below(n - 1);
        const std::uint64_t j = rng.below(301);
        OracleSpec oracle(n, random_subset(n, t, rng));
        const ProblemShape shape = oracle.shape();
        if (!fft::is_power_of_two(n)) ++non_pow2;

        const DiffusionOperator dft_op = DiffusionOperator::exact_dft(n);
        StateVector fast = StateVector::uniform(n);
        StateVector via_dft = fast;
        std::optional<StateVector> via_wh;
        std::optional<DiffusionOperator> wh_op;
        if (fft::is_power_of_two(n)) {
            wh_op = DiffusionOperator::walsh_hadamard(n);
            via_wh = fast;
            ++wh_cases;
        }
        for (std::uint64_t step = 0; step < j; ++step) {
            grover_iterate(fast, oracle, dft_op);
            apply_phase_flip(via_dft, oracle.solutions());
            dft_op.apply_via_transform(via_dft);
            if (via_wh) {
                apply_phase_flip(*via_wh, oracle.solutions());
                wh_op->apply_via_transform(*via_wh);
            }
        }
        const AmplitudePair amp = amplitudes(shape, j);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double expect = oracle.contains(i) ? amp.k : amp.l;
            closed_err = std::max(closed_err, std::abs(fast[i] - cplx(expect, 0.0)));
            route_err = std::max(route_err, std::abs(via_dft[i] - fast[i]));
            if (via_wh) route_err = std::max(route_err, std::abs((*via_wh)[i] - fast[i]));
        }
    }
    return make(closed_err <= 1e-10 && route_err <= 1e-10, Detail()
                                                               .add("cases", 200)
                                                               .add("non_power_of_two", non_pow2)
                                                               .add("walsh_hadamard_cases", wh_cases)
                                                               .add("max_closed_form_error", closed_err)
                                                               .add("max_route_disagreement", route_err));
}

// 10. Counting error bound and exact recovery.
CriterionResult counting(std::uint64_t seed) {
    const std::uint64_t n = 1024;
    const std::uint64_t P = 1024;
    Detail d;
    bool pass = true;
    for (std::uint64_t t : {1, 4, 16, 64}) {
        const ProblemShape shape = make_shape(n, static_cast<std::int64_t>(t));
        const double f = true_frequency(shape, P);
        const double bound = counting_error_bound(static_cast<double>(t), n, P);

        const auto fixed = run_trials(500, seed + t, [&](std::uint64_t, Rng& rng) { return estimate_t(shape, P, rng); });
        std::uint64_t near = 0, violations = 0;
        for (const CountingEstimate& e : fixed) {
            if (std::abs(f - e.f_tilde) < 1.0) {
                ++near;
                if (!(std::abs(static_cast<double>(t) - e.t_tilde) < bound)) ++violations;
            }
        }

        const auto exact = run_trials(500, seed + 1000 + t, [&](std::uint64_t, Rng& rng) {
            return count_with_regime(shape, Regime::exact, kExactRegimeMinC, rng);
        });
        std::uint64_t exact_near = 0, exact_wrong = 0, exact_hits = 0;
        for (const CountingEstimate& e : exact) {
            if (e.t_rounded == static_cast<std::int64_t>(t)) ++exact_hits;
            if (std::abs(true_frequency(shape, e.P) - e.f_tilde) < 1.0) {
                ++exact_near;
                if (e.t_rounded != static_cast<std::int64_t>(t)) ++exact_wrong;
            }
        }
        pass = pass && violations == 0 && exact_wrong == 0;
        std::ostringstream tag;
        tag << "t" << t;
        d.add(tag.str() + ".p_within_one_bin", static_cast<double>(near) / 500.0)
            .add(tag.str() + ".bound_violations", violations)
            .add(tag.str() + ".exact_p_within_one_bin", static_cast<double>(exact_near) / 500.0)
            .add(tag.str() + ".exact_wrong", exact_wrong)
            .add(tag.str() + ".exact_rate", static_cast<double>(exact_hits) / 500.0);
    }
    return make(pass, d);
}

// 11. Lower bounds and Grover's distance from them.
CriterionResult lower_bounds(std::uint64_t seed) {
    const std::uint64_t lb = lower_bound_unique(1 << 20);
    double first = 0.0, last = 0.0;
    for (int e = 10; e <= 20; ++e) {
        const BoundReport r = compare_grover_to_bound(std::uint64_t{1} << e, 1);
        if (e == 10) first = r.ratio;
        last = r.ratio;
    }
    const double limit = asymptotic_ratio();
    Rng rng(seed);
    const PropositionReport props = proposition_checks(rng, 10000);
    const bool approaches = std::abs(last - limit) <= std::abs(first - limit);
    const bool pass = lb == 391 && std::abs(last - 2.05) <= 0.05 && approaches && props.ok;
    return make(pass, Detail()
                          .add("lower_bound_unique_2^20", lb)
                          .add("ratio_2^10", first)
                          .add("ratio_2^20", last)
                          .add("limit", limit)
                          .add("propositions_ok", props.ok)
                          .add("instances", props.instances));
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> list{
        {1, "iteration-count", iteration_count},
        {2, "optimal-stopping", stopping_plan},
        {3, "stopping-constants", constants},
        {4, "quarter-certainty", certainty},
        {5, "failure-bound", failure_bound},
        {6, "non-monotonicity", non_monotonic},
        {7, "averaged-success", averaged},
        {8, "unknown-t-cost", unknown_t},
        {9, "simulator-closed-form", simulator_equivalence},
        {10, "counting-error-bound", counting},
        {11, "lower-bounds", lower_bounds},
    };
    return list;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log) {
    std::vector<CriterionResult> results;
    for (const Criterion& c : acceptance_criteria()) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = c.run(options.seed);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = c.id;
        r.name = c.name;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        log << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << ' ' << std::left << std::setw(22) << r.name
            << std::right << ' ' << r.detail << " (" << std::fixed << std::setprecision(2) << r.seconds << "s)"
            << std::defaultfloat << '\n'
            << std::flush;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace glab
