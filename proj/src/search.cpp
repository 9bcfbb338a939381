#include "glab/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glab {

namespace {

DiffusionOperator diffusion_for(const OracleSpec& oracle, Backend backend) {
    // The subspace backend never touches the operator; avoid building one
    // for huge N anyway.
    if (backend == Backend::subspace) return DiffusionOperator::exact_dft(oracle.dimension());
    return DiffusionOperator::natural(oracle.dimension());
}

// Runs j iterations, measures, confirms classically. Returns true on a hit.
bool attempt(OracleSpec& oracle, const DiffusionOperator& op, std::uint64_t j, Backend backend, Rng& rng,
             SearchOutcome& out) {
    const std::uint64_t i = run_and_measure(oracle, op, j, backend, rng);
    out.grover_iterations_used += j;
    ++out.rounds;
    ++out.classical_probes_used;
    if (oracle.lookup(i)) {
        out.found_index = i;
        out.success = true;
    }
    return out.success;
}

void finish(SearchOutcome& out) {
    out.oracle_lookups_used = 2 * out.grover_iterations_used + out.classical_probes_used;
}

ProblemShape shape_for(const OracleSpec& oracle, std::uint64_t t) {
    if (t == 0) throw std::domain_error("search with known t requires t >= 1");
    return make_shape(static_cast<std::int64_t>(oracle.dimension()), static_cast<std::int64_t>(t));
}

}  // namespace

SearchOutcome search_known_t(OracleSpec& oracle, std::uint64_t t, Rng& rng, SearchOptions options) {
    const ProblemShape shape = shape_for(oracle, t);
    const DiffusionOperator op = diffusion_for(oracle, options.backend);
    SearchOutcome out;
    out.seed = rng.seed();
    attempt(oracle, op, optimal_iterations(shape), options.backend, rng, out);
    finish(out);
    return out;
}

SearchOutcome search_restart_optimal(OracleSpec& oracle, std::uint64_t t, Rng& rng, std::uint64_t max_restarts,
                                     SearchOptions options) {
    const ProblemShape shape = shape_for(oracle, t);
    const std::uint64_t j = shape.full() ? 0 : optimal_stopping(shape).j_star;
    const DiffusionOperator op = diffusion_for(oracle, options.backend);
    SearchOutcome out;
    out.seed = rng.seed();
    for (std::uint64_t a = 0; a <= max_restarts; ++a) {
        if (attempt(oracle, op, j, options.backend, rng, out)) break;
    }
    finish(out);
    return out;
}

UnknownTConfig UnknownTConfig::defaults(std::uint64_t table_size) {
    UnknownTConfig c;
    const double root = std::sqrt(static_cast<double>(table_size));
    c.m_cap = root;
    c.timeout_total_iterations = static_cast<std::uint64_t>(std::ceil(4.5 * root));
    return c;
}

void UnknownTConfig::validate() const {
    if (!(lambda > 1.0 && lambda < 4.0 / 3.0))
        throw std::invalid_argument("lambda must lie strictly between 1 and 4/3");
    if (!(m_cap >= 1.0)) throw std::invalid_argument("m_cap must be >= 1");
}

SearchOutcome search_unknown_t(OracleSpec& oracle, const UnknownTConfig& config, Rng& rng,
                               std::vector<RoundTrace>* trace) {
    config.validate();
    const std::uint64_t n = oracle.dimension();
    SearchOutcome out;
    out.seed = rng.seed();

    // Dense tables (t > 3N/4) are settled here with overwhelming probability.
    for (std::uint64_t p = 0; p < config.classical_presample_count; ++p) {
        const std::uint64_t i = rng.below(n);
        ++out.classical_probes_used;
        if (oracle.lookup(i)) {
            out.found_index = i;
            out.success = true;
            finish(out);
            return out;
        }
    }

    const DiffusionOperator op = diffusion_for(oracle, config.backend);
    double m = 1.0;
    for (;;) {
        const auto range = static_cast<std::uint64_t>(std::ceil(m));
        const std::uint64_t j = rng.below(range);
        // Time-out: declare "no solution" rather than exceed the budget. The
        // round cap matters only when m_cap = 1 and every draw is j = 0.
        if (out.grover_iterations_used + j > config.timeout_total_iterations) break;
        if (out.rounds >= config.timeout_total_iterations) break;
        if (trace != nullptr) trace->push_back({m, j});
        if (attempt(oracle, op, j, config.backend, rng, out)) break;
        m = std::min(config.lambda * m, config.m_cap);
    }
    finish(out);
    return out;
}

double average_success_check(const ProblemShape& shape, std::uint64_t m, Rng& rng, std::uint64_t trials) {
    if (shape.empty() || shape.full()) throw std::domain_error("average_success_check: need 0 < t < N");
    if (m == 0 || trials == 0) throw std::invalid_argument("average_success_check: m and trials must be >= 1");

    // Success probability per j, from the recurrence rather than the closed form.
    const double t = static_cast<double>(shape.solution_count);
    std::vector<double> p;
    p.reserve(m);
    for (const AmplitudePair& amp : collapsed_trajectory(shape, m)) p.push_back(t * amp.k * amp.k);

    std::uint64_t hits = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        if (rng.bernoulli(p[rng.below(m)])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace glab
