#pragma once

namespace glab {

// Numeric tolerances shared by all modules. Tests pin the same values.
struct Tolerances {
    // sin^2(theta) * N must reproduce t to this accuracy.
    double shape_identity = 1e-12;
    // Bisection stopping width for the optimal-stopping root, in iterations.
    double stopping_root = 1e-9;
    // Bisection stopping width for z = tan(z/2).
    double z_root = 1e-10;
    // measure() refuses states whose norm is off by more than this.
    double measure_norm = 1e-6;
    // Unitarity / first-column checks on custom diffusion matrices.
    double unitary_entry = 1e-10;
    // Proposition checks slack.
    double proposition_slack = 1e-12;
};

inline constexpr Tolerances kTolerances{};

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace glab
