#pragma once

// Solution counting by Fourier period estimation.
//
// Running G^j on the uniform state for j in [0, P) and observing the table
// register leaves the iteration register in sum_j k_j |j> (or sum_j l_j |j>),
// a sampled sinusoid with f = P theta / pi periods in the window. A DFT and a
// measurement give nu close to f or P - f, hence theta and t.
//
// The production path builds the collapsed iteration register from the
// closed form in O(P); joint_state_crosscheck materialises the full
// P x N joint state with the simulator for small sizes.

#include <cstdint>
#include <string_view>
#include <vector>

#include "glab/analytics.hpp"
#include "glab/rng.hpp"
#include "glab/simulator.hpp"

namespace glab {

enum class Branch { solution, non_solution };
enum class Regime { fixed, relative, absolute, exact };

std::string_view to_string(Branch b);
std::string_view to_string(Regime r);
// Throws std::invalid_argument on unknown names.
Regime parse_regime(std::string_view name);

struct JRegister {
    std::uint64_t period_window = 0;  // P
    Branch branch = Branch::solution;
    std::vector<cplx> amplitudes;
};

struct CountingEstimate {
    std::uint64_t P = 0;
    std::uint64_t measured_frequency = 0;  // nu
    double f_tilde = 0.0;                  // min(nu, P - nu)
    double theta_tilde = 0.0;              // f_tilde pi / P
    double t_tilde = 0.0;                  // N sin^2(theta_tilde)
    std::int64_t t_rounded = 0;
    double error_bound = 0.0;  // (2 pi / P) sqrt(t_tilde N) + pi^2 N / P^2
    Regime regime = Regime::fixed;
    Branch branch = Branch::solution;
    std::uint64_t total_work = 0;  // sum of P over all runs behind this estimate
};

// Smallest exact-regime constant for which the error bound stays below 1/2.
inline constexpr double kExactRegimeMinC = 14.0;

// Probability that observing the table register yields a solution:
// (1/P) sum_j sin^2((2j+1) theta).
double solution_branch_probability(const ProblemShape& shape, std::uint64_t P);

// Forced branch. Throws std::invalid_argument for bad P or an impossible
// branch (solution with t = 0, non-solution with t = N).
JRegister build_j_register(const ProblemShape& shape, std::uint64_t P, Branch branch);
// Branch drawn with the true collapse probabilities.
JRegister build_j_register(const ProblemShape& shape, std::uint64_t P, Rng& rng);

// Unitary DFT, b_v = (1/sqrt(P)) sum_j a_j exp(2 pi i j v / P).
JRegister dft(JRegister reg);

// |b_v|^2 after the DFT of the given branch.
std::vector<double> spectrum(const ProblemShape& shape, std::uint64_t P, Branch branch);

// Error bound with a given t (true or estimated).
double counting_error_bound(double t, std::uint64_t N, std::uint64_t P);

// True f = P theta / pi.
double true_frequency(const ProblemShape& shape, std::uint64_t P);

CountingEstimate estimate_t(const ProblemShape& shape, std::uint64_t P, Rng& rng);
CountingEstimate estimate_t(const OracleSpec& oracle, std::uint64_t P, Rng& rng);

// P selection per accuracy regime (P always rounded up to a power of two):
//   fixed     P >= c sqrt(N), one run
//   relative  P = 2, 4, 8, ... until f_tilde >= c
//   absolute  fixed run, then rerun with P >= c sqrt(t_hi N) until the
//             window satisfies that for its own estimate
//   exact     absolute with c >= 14; t_rounded is then exact when the final
//             run lands within one bin of f
// Throws std::invalid_argument for c <= 0, or c < 14 in the exact regime.
CountingEstimate count_with_regime(const ProblemShape& shape, Regime regime, double c, Rng& rng);

struct JointCheck {
    bool ok = false;
    double max_amplitude_error = 0.0;
    double branch_probability_error = 0.0;
};

// Builds the full joint state with the statevector simulator, collapses the
// table register on a representative index of `branch`, and compares with
// build_j_register. Requires N <= 64 and P <= 64.
JointCheck joint_state_crosscheck(const ProblemShape& shape, std::uint64_t P, Branch branch);

}  // namespace glab
