#include "glab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glab/config.hpp"

namespace glab {

namespace {

void require_solutions(const ProblemShape& shape, const char* what) {
    if (shape.empty()) throw std::domain_error(std::string(what) + ": t must be >= 1");
}

void require_interior(const ProblemShape& shape, const char* what) {
    require_solutions(shape, what);
    if (shape.full()) throw std::domain_error(std::string(what) + ": t must be < N");
}

double phase(const ProblemShape& shape, double j) { return (2.0 * j + 1.0) * shape.theta; }

double expected_cost(const ProblemShape& shape, std::uint64_t j) {
    const double s = std::sin(phase(shape, static_cast<double>(j)));
    return static_cast<double>(j) / (s * s);
}

}  // namespace

ProblemShape make_shape(std::int64_t table_size, std::int64_t solution_count) {
    if (table_size < 1) throw std::invalid_argument("N must be >= 1");
    if (solution_count < 0) throw std::invalid_argument("t must be >= 0");
    if (solution_count > table_size) throw std::invalid_argument("t must be <= N");

    ProblemShape shape;
    shape.table_size = static_cast<std::uint64_t>(table_size);
    shape.solution_count = static_cast<std::uint64_t>(solution_count);
    if (shape.full())
        shape.theta = kPi / 2.0;
    else
        shape.theta = std::asin(std::sqrt(shape.ratio()));
    return shape;
}

AmplitudePair amplitudes(const ProblemShape& shape, std::uint64_t iterations) {
    require_solutions(shape, "amplitudes");
    const double x = phase(shape, static_cast<double>(iterations));
    const double t = static_cast<double>(shape.solution_count);
    const double rest = static_cast<double>(shape.table_size - shape.solution_count);
    AmplitudePair pair;
    pair.k = std::sin(x) / std::sqrt(t);
    pair.l = shape.full() ? 0.0 : std::cos(x) / std::sqrt(rest);
    return pair;
}

double success_probability(const ProblemShape& shape, std::uint64_t iterations) {
    if (shape.empty()) return 0.0;
    if (shape.full()) return 1.0;
    const double s = std::sin(phase(shape, static_cast<double>(iterations)));
    return s * s;
}

std::uint64_t optimal_iterations(const ProblemShape& shape) {
    require_solutions(shape, "optimal_iterations");
    return static_cast<std::uint64_t>(std::floor(kPi / (4.0 * shape.theta)));
}

double averaged_success(const ProblemShape& shape, std::uint64_t m) {
    require_interior(shape, "averaged_success");
    if (m == 0) throw std::invalid_argument("averaged_success: m must be >= 1");
    const double md = static_cast<double>(m);
    return 0.5 - std::sin(4.0 * md * shape.theta) / (4.0 * md * std::sin(2.0 * shape.theta));
}

double trig_sum(double alpha, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("trig_sum: m must be >= 1");
    const double s = std::sin(alpha);
    // Reject alpha within rounding of k*pi.
    if (std::abs(s) < 1e-14) throw std::domain_error("trig_sum: alpha is a multiple of pi");
    return std::sin(2.0 * static_cast<double>(m) * alpha) / (2.0 * s);
}

StoppingPlan optimal_stopping(const ProblemShape& shape) {
    require_interior(shape, "optimal_stopping");
    const double theta = shape.theta;

    // g(j) = 4 theta j - tan((2j+1) theta) on the branch (2j+1) theta < pi/2.
    // g peaks where (2j+1) theta = pi/4 and falls to -inf at the branch end,
    // so the minimizer of E is bracketed by [peak, end) whenever g(peak) > 0.
    auto g = [&](double j) { return 4.0 * theta * j - std::tan(phase(shape, j)); };
    const double peak = (kPi / (4.0 * theta) - 1.0) / 2.0;
    const double branch_end = (kPi / (2.0 * theta) - 1.0) / 2.0;

    StoppingPlan plan;
    if (peak > 0.0 && g(peak) > 0.0) {
        double lo = peak;
        double hi = branch_end;
        while (hi - lo > kTolerances.stopping_root) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (g(mid) > 0.0 ? lo : hi) = mid;
        }
        plan.real_root = 0.5 * (lo + hi);
    }

    // Integer candidates around the real optimum; ties go to fewer iterations.
    // E(0) = 0 only because zero iterations cost nothing, so j = 0 is kept
    // for the no-optimum case alone.
    const auto below = std::max<std::uint64_t>(plan.real_root > 0.0 ? 1 : 0,
                                               static_cast<std::uint64_t>(std::floor(plan.real_root)));
    const auto above = static_cast<std::uint64_t>(std::ceil(plan.real_root));
    plan.j_star = expected_cost(shape, above) < expected_cost(shape, below) ? above : below;
    plan.success_prob = success_probability(shape, plan.j_star);
    plan.expected_iterations = static_cast<double>(plan.j_star) / plan.success_prob;
    return plan;
}

double z_constant() {
    double lo = 2.0;
    double hi = 3.0;
    // h(z) = z - tan(z/2) is positive at 2 and negative at 3.
    while (hi - lo > kTolerances.z_root) {
        const double mid = 0.5 * (lo + hi);
        (mid - std::tan(mid / 2.0) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double critical_scale(const ProblemShape& shape) {
    require_interior(shape, "critical_scale");
    return 1.0 / std::sin(2.0 * shape.theta);
}

}  // namespace glab
