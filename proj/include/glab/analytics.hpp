#pragma once

// Closed-form amplitude analytics for amplitude amplification.
//
// With t marked entries out of N and sin^2(theta) = t/N, j Grover iterations
// from the uniform state leave every marked index with amplitude
//   k_j = sin((2j+1) theta) / sqrt(t)
// and every unmarked index with
//   l_j = cos((2j+1) theta) / sqrt(N - t).
// Everything here is a pure function of (N, t, j).

#include <cstdint>

namespace glab {

struct ProblemShape {
    std::uint64_t table_size = 1;      // N
    std::uint64_t solution_count = 0;  // t
    double theta = 0.0;                // sin^2(theta) = t / N

    double ratio() const {
        return static_cast<double>(solution_count) / static_cast<double>(table_size);
    }
    bool empty() const { return solution_count == 0; }
    bool full() const { return solution_count == table_size; }
};

// Common amplitude on solutions (k) and on non-solutions (l).
struct AmplitudePair {
    double k = 0.0;
    double l = 0.0;
};

struct StoppingPlan {
    std::uint64_t j_star = 0;
    double success_prob = 0.0;
    double expected_iterations = 0.0;  // j_star / success_prob
    double real_root = 0.0;            // optimum before rounding; 0 if none
};

// Throws std::invalid_argument unless N >= 1 and 0 <= t <= N.
ProblemShape make_shape(std::int64_t table_size, std::int64_t solution_count);

// Throws std::domain_error for t = 0. For t = N, l is 0 by convention.
AmplitudePair amplitudes(const ProblemShape& shape, std::uint64_t iterations);

// sin^2((2j+1) theta).
double success_probability(const ProblemShape& shape, std::uint64_t iterations);

// floor(pi / (4 theta)). Throws std::domain_error for t = 0.
std::uint64_t optimal_iterations(const ProblemShape& shape);

// Success probability when j is drawn uniformly from [0, m):
//   P_m = 1/2 - sin(4 m theta) / (4 m sin(2 theta)).
// Requires m >= 1 and 0 < t < N.
double averaged_success(const ProblemShape& shape, std::uint64_t m);

// sum_{j<m} cos((2j+1) alpha) = sin(2 m alpha) / (2 sin alpha).
// Throws std::domain_error when alpha is a multiple of pi.
double trig_sum(double alpha, std::uint64_t m);

// Expected iterations-until-success when measuring after j iterations and
// restarting on failure; minimizes E(j) = j / sin^2((2j+1) theta).
// Requires 0 < t < N.
StoppingPlan optimal_stopping(const ProblemShape& shape);

// Root of z = tan(z/2) on (2, 3); about 2.33112.
double z_constant();

// 1 / sin(2 theta) = N / (2 sqrt((N - t) t)). Requires 0 < t < N.
double critical_scale(const ProblemShape& shape);

}  // namespace glab
