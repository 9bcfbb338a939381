#include "glab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glab/config.hpp"
#include "glab/fft.hpp"

namespace glab {

std::string_view to_string(Branch b) { return b == Branch::solution ? "solution" : "non-solution"; }

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::fixed: return "fixed";
        case Regime::relative: return "relative";
        case Regime::absolute: return "absolute";
        case Regime::exact: return "exact";
    }
    return "?";
}

Regime parse_regime(std::string_view name) {
    for (Regime r : {Regime::fixed, Regime::relative, Regime::absolute, Regime::exact})
        if (to_string(r) == name) return r;
    throw std::invalid_argument("unknown regime '" + std::string(name) + "'");
}

namespace {

void require_window(std::uint64_t P) {
    if (P < 2 || !fft::is_power_of_two(P))
        throw std::invalid_argument("P must be a power of two >= 2, got " + std::to_string(P));
}

std::uint64_t window_at_least(double x) {
    const double need = std::max(2.0, std::ceil(x));
    return fft::next_power_of_two(static_cast<std::size_t>(need));
}

std::uint64_t sample_index(std::span<const double> weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) last_nonzero = i;
        acc += weights[i];
        if (u < acc) return i;
    }
    return last_nonzero;
}

std::vector<double> power(const JRegister& reg) {
    std::vector<double> p(reg.amplitudes.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(reg.amplitudes[i]);
    return p;
}

CountingEstimate estimate_from(const ProblemShape& shape, JRegister reg, Rng& rng) {
    const std::uint64_t P = reg.period_window;
    const Branch branch = reg.branch;
    const JRegister spec = dft(std::move(reg));

    CountingEstimate e;
    e.P = P;
    e.branch = branch;
    e.measured_frequency = sample_index(power(spec), rng);
    e.f_tilde = static_cast<double>(std::min(e.measured_frequency, P - e.measured_frequency));
    e.theta_tilde = e.f_tilde * kPi / static_cast<double>(P);
    const double s = std::sin(e.theta_tilde);
    e.t_tilde = static_cast<double>(shape.table_size) * s * s;
    e.t_rounded = std::llround(e.t_tilde);
    e.error_bound = counting_error_bound(e.t_tilde, shape.table_size, P);
    e.total_work = P;
    return e;
}

}  // namespace

double solution_branch_probability(const ProblemShape& shape, std::uint64_t P) {
    require_window(P);
    double acc = 0.0;
    for (std::uint64_t j = 0; j < P; ++j) acc += success_probability(shape, j);
    return acc / static_cast<double>(P);
}

JRegister build_j_register(const ProblemShape& shape, std::uint64_t P, Branch branch) {
    require_window(P);
    if (branch == Branch::solution && shape.empty())
        throw std::invalid_argument("solution branch impossible with t = 0");
    if (branch == Branch::non_solution && shape.full())
        throw std::invalid_argument("non-solution branch impossible with t = N");

    JRegister reg;
    reg.period_window = P;
    reg.branch = branch;
    reg.amplitudes.resize(P);
    // Per-index amplitudes are k_j or l_j; the constant 1/sqrt(t) or
    // 1/sqrt(N-t) drops out in the renormalisation.
    for (std::uint64_t j = 0; j < P; ++j) {
        const double x = (2.0 * static_cast<double>(j) + 1.0) * shape.theta;
        reg.amplitudes[j] = branch == Branch::solution ? std::sin(x) : std::cos(x);
    }
    double norm = 0.0;
    for (const cplx& a : reg.amplitudes) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (cplx& a : reg.amplitudes) a /= norm;
    return reg;
}

JRegister build_j_register(const ProblemShape& shape, std::uint64_t P, Rng& rng) {
    Branch branch;
    if (shape.empty())
        branch = Branch::non_solution;
    else if (shape.full())
        branch = Branch::solution;
    else
        branch = rng.bernoulli(solution_branch_probability(shape, P)) ? Branch::solution : Branch::non_solution;
    return build_j_register(shape, P, branch);
}

JRegister dft(JRegister reg) {
    require_window(reg.period_window);
    if (reg.amplitudes.size() != reg.period_window) throw std::invalid_argument("register length != P");
    fft::dft(reg.amplitudes);
    return reg;
}

std::vector<double> spectrum(const ProblemShape& shape, std::uint64_t P, Branch branch) {
    return power(dft(build_j_register(shape, P, branch)));
}

double counting_error_bound(double t, std::uint64_t N, std::uint64_t P) {
    const double n = static_cast<double>(N);
    const double p = static_cast<double>(P);
    return 2.0 * kPi / p * std::sqrt(std::max(t, 0.0) * n) + kPi * kPi * n / (p * p);
}

double true_frequency(const ProblemShape& shape, std::uint64_t P) {
    return static_cast<double>(P) * shape.theta / kPi;
}

CountingEstimate estimate_t(const ProblemShape& shape, std::uint64_t P, Rng& rng) {
    return estimate_from(shape, build_j_register(shape, P, rng), rng);
}

CountingEstimate estimate_t(const OracleSpec& oracle, std::uint64_t P, Rng& rng) {
    return estimate_t(oracle.shape(), P, rng);
}

CountingEstimate count_with_regime(const ProblemShape& shape, Regime regime, double c, Rng& rng) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
    if (regime == Regime::exact && c < kExactRegimeMinC)
        throw std::invalid_argument("exact regime requires c >= 14");

    const double n = static_cast<double>(shape.table_size);
    const double root_n = std::sqrt(n);
    CountingEstimate e;

    switch (regime) {
        case Regime::fixed: {
            e = estimate_t(shape, window_at_least(c * root_n), rng);
            break;
        }
        case Regime::relative: {
            // f grows like P sqrt(t/N) / pi, so f_tilde >= c is reached by
            // P ~ c pi sqrt(N) even for t = 1; beyond that t is taken as 0.
            const std::uint64_t limit = 2 * window_at_least(c * kPi * root_n);
            std::uint64_t work = 0;
            for (std::uint64_t P = 2;; P *= 2) {
                e = estimate_t(shape, P, rng);
                work += P;
                if (e.f_tilde >= c || P >= limit) break;
            }
            e.total_work = work;
            break;
        }
        case Regime::absolute:
        case Regime::exact: {
            // Grow P until the window suits its own estimate: P >= c sqrt(t_hi N),
            // with t_hi the top of the one-bin interval around f_tilde. A run
            // that lands within one bin then has t <= t_hi, which keeps the
            // error bound below 1/2 for c >= 14.
            std::uint64_t P = window_at_least(c * root_n);
            std::uint64_t work = 0;
            for (;;) {
                e = estimate_t(shape, P, rng);
                work += P;
                const double f_hi = std::min(e.f_tilde + 1.0, static_cast<double>(P) / 2.0);
                const double s = std::sin(f_hi * kPi / static_cast<double>(P));
                const double t_hi = n * s * s;
                const std::uint64_t need = window_at_least(c * std::sqrt(t_hi * n));
                if (need <= P) break;
                P = need;
            }
            e.total_work = work;
            break;
        }
    }
    e.regime = regime;
    return e;
}

JointCheck joint_state_crosscheck(const ProblemShape& shape, std::uint64_t P, Branch branch) {
    require_window(P);
    const std::uint64_t N = shape.table_size;
    if (N > 64 || P > 64) throw std::invalid_argument("joint-state check limited to N <= 64 and P <= 64");

    // Marked set {0, ..., t-1}; any placement gives the same amplitudes.
    std::vector<std::uint64_t> marked(shape.solution_count);
    for (std::uint64_t i = 0; i < marked.size(); ++i) marked[i] = i;
    OracleSpec oracle(N, marked);
    const DiffusionOperator op = DiffusionOperator::natural(N);

    // rows[j] = G^j |uniform>; the joint amplitude of |j, i> is rows[j][i] / sqrt(P).
    std::vector<StateVector> rows;
    rows.reserve(P);
    StateVector state = StateVector::uniform(N);
    for (std::uint64_t j = 0; j < P; ++j) {
        rows.push_back(state);
        grover_iterate(state, oracle, op);
    }

    double p_solution = 0.0;
    for (const StateVector& row : rows)
        for (std::uint64_t i : oracle.solutions()) p_solution += row.probability(i) / static_cast<double>(P);

    const std::uint64_t observed = branch == Branch::solution ? 0 : shape.solution_count;
    if (observed >= N) throw std::invalid_argument("non-solution branch impossible with t = N");
    if (branch == Branch::solution && shape.empty())
        throw std::invalid_argument("solution branch impossible with t = 0");

    std::vector<cplx> collapsed(P);
    double norm = 0.0;
    for (std::uint64_t j = 0; j < P; ++j) {
        collapsed[j] = rows[j][observed] / std::sqrt(static_cast<double>(P));
        norm += std::norm(collapsed[j]);
    }
    norm = std::sqrt(norm);
    for (cplx& a : collapsed) a /= norm;

    const JRegister closed = build_j_register(shape, P, branch);
    JointCheck check;
    for (std::uint64_t j = 0; j < P; ++j)
        check.max_amplitude_error = std::max(check.max_amplitude_error, std::abs(collapsed[j] - closed.amplitudes[j]));
    const double expected_p = shape.empty() ? 0.0 : solution_branch_probability(shape, P);
    check.branch_probability_error = std::abs(p_solution - expected_p);
    check.ok = check.max_amplitude_error <= 1e-9 && check.branch_probability_error <= 1e-9;
    return check;
}

}  // namespace glab
