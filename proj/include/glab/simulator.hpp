#pragma once

// Exact statevector simulation of Grover iterations over an arbitrary table
// size N, with oracle-lookup accounting.
//
// One iteration is the phase flip S_A followed by the diffusion
// -T' S_0 T'^{-1}, for any unitary T' with T'|0> uniform. The leading minus
// sign is folded into the diffusion so amplitudes stay real and match the
// closed form term for term. Every such diffusion equals inversion about the
// mean, a -> 2 mean - a, which is the O(N) path used in production.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "glab/analytics.hpp"
#include "glab/rng.hpp"

namespace glab {

using cplx = std::complex<double>;

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<cplx> amplitudes);

    // 1/sqrt(N) on every index. Throws for N = 0.
    static StateVector uniform(std::uint64_t dimension);
    static StateVector basis(std::uint64_t dimension, std::uint64_t index);

    std::uint64_t dimension() const { return amplitudes_.size(); }
    std::span<const cplx> amplitudes() const { return amplitudes_; }
    std::span<cplx> amplitudes() { return amplitudes_; }
    const cplx& operator[](std::uint64_t i) const { return amplitudes_[i]; }
    cplx& operator[](std::uint64_t i) { return amplitudes_[i]; }

    double norm_squared() const;
    double probability(std::uint64_t i) const { return std::norm(amplitudes_[i]); }

private:
    std::vector<cplx> amplitudes_;
};

// The marked set A of a search problem plus its lookup counter. The counter
// is per-simulation state; callers running trials in parallel give each
// trial its own OracleSpec.
class OracleSpec {
public:
    // Sorts and deduplicates; throws std::out_of_range for indices >= N.
    OracleSpec(std::uint64_t dimension, std::vector<std::uint64_t> solutions);

    std::uint64_t dimension() const { return dimension_; }
    std::uint64_t solution_count() const { return solutions_.size(); }
    std::span<const std::uint64_t> solutions() const { return solutions_; }
    ProblemShape shape() const;

    // Membership without accounting; for verification and tests.
    bool contains(std::uint64_t i) const;

    // One classical table lookup T[i] == x; counted.
    bool lookup(std::uint64_t i);

    std::uint64_t query_count() const { return query_count_; }
    void add_queries(std::uint64_t n) { query_count_ += n; }
    void reset_queries() { query_count_ = 0; }

private:
    std::uint64_t dimension_;
    std::vector<std::uint64_t> solutions_;
    std::uint64_t query_count_ = 0;
};

enum class DiffusionKind { walsh_hadamard, exact_dft, custom };

class DiffusionOperator {
public:
    // Throws std::invalid_argument unless N is a power of two.
    static DiffusionOperator walsh_hadamard(std::uint64_t dimension);
    static DiffusionOperator exact_dft(std::uint64_t dimension);
    // Row-major N x N matrix for T'. Throws unless unitary with a uniform
    // first column.
    static DiffusionOperator custom(std::uint64_t dimension, std::vector<cplx> matrix);
    // Walsh-Hadamard for powers of two, exact DFT otherwise.
    static DiffusionOperator natural(std::uint64_t dimension);

    DiffusionKind kind() const { return kind_; }
    std::uint64_t dimension() const { return dimension_; }

    // Explicit T' (row-major). Only for N <= kMaxMatrixDimension.
    std::vector<cplx> matrix() const;

    // Fast path: a -> 2 mean(a) - a.
    void apply(StateVector& state) const;
    // -T' S_0 T'^{-1} evaluated through the transform itself (fast WHT,
    // FFT, or dense product for custom operators).
    void apply_via_transform(StateVector& state) const;
    // -T' S_0 T'^{-1} as an explicit matrix-vector product.
    void apply_via_matrix(StateVector& state) const;

    static constexpr std::uint64_t kMaxMatrixDimension = 256;

private:
    DiffusionOperator(DiffusionKind kind, std::uint64_t dimension, std::vector<cplx> matrix = {})
        : kind_(kind), dimension_(dimension), matrix_(std::move(matrix)) {}

    DiffusionKind kind_;
    std::uint64_t dimension_;
    std::vector<cplx> matrix_;
};

// Random unitary with first column (1/sqrt(N), ..., 1/sqrt(N)).
DiffusionOperator random_diffusion(std::uint64_t dimension, Rng& rng);

// Max |(U^dagger U - I)_ij| for a row-major N x N matrix.
double unitarity_error(std::span<const cplx> matrix, std::uint64_t dimension);

// Negates amplitudes on `indices`. Throws std::out_of_range on a bad index.
void apply_phase_flip(StateVector& state, std::span<const std::uint64_t> indices);
// Oracle form: flips on the solution set and counts one lookup.
void apply_phase_flip(StateVector& state, OracleSpec& oracle);

void apply_diffusion(StateVector& state, const DiffusionOperator& op);

// Phase flip then diffusion; counts two lookups (compute and uncompute).
void grover_iterate(StateVector& state, OracleSpec& oracle, const DiffusionOperator& op);

// Samples index i with probability |a_i|^2. Throws std::domain_error if the
// norm is off by more than the measurement tolerance.
std::uint64_t measure(const StateVector& state, Rng& rng);

// j steps of the two-dimensional recurrence
//   k' = ((N-2t)/N) k + (2(N-t)/N) l,  l' = ((N-2t)/N) l - (2t/N) k
// from k = l = 1/sqrt(N). Throws std::domain_error for t = 0.
AmplitudePair collapsed_simulate(const ProblemShape& shape, std::uint64_t iterations);

// (k_j, l_j) for j = 0 .. count-1 from the same recurrence.
std::vector<AmplitudePair> collapsed_trajectory(const ProblemShape& shape, std::uint64_t count);

// How a search strategy realises "run j iterations from uniform, measure".
enum class Backend {
    statevector,  // full O(N) simulation
    subspace,     // collapsed two-dimensional amplitudes, same distribution
};

// Runs j Grover iterations from the uniform state and measures once.
// Counts 2j lookups on the oracle in both backends.
std::uint64_t run_and_measure(OracleSpec& oracle, const DiffusionOperator& op,
                              std::uint64_t iterations, Backend backend, Rng& rng);

}  // namespace glab
