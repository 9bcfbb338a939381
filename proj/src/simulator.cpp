#include "glab/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glab/config.hpp"
#include "glab/fft.hpp"
#include "glab/kernels.hpp"

namespace glab {

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::uniform(std::uint64_t dimension) {
    if (dimension == 0) throw std::invalid_argument("state dimension must be >= 1");
    return StateVector(std::vector<cplx>(dimension, cplx(1.0 / std::sqrt(static_cast<double>(dimension)), 0.0)));
}

StateVector StateVector::basis(std::uint64_t dimension, std::uint64_t index) {
    if (index >= dimension) throw std::out_of_range("basis index out of range");
    std::vector<cplx> a(dimension, cplx{});
    a[index] = 1.0;
    return StateVector(std::move(a));
}

double StateVector::norm_squared() const { return kernels::active().norm_squared(amplitudes_); }

// ---------------------------------------------------------------------------
// OracleSpec

OracleSpec::OracleSpec(std::uint64_t dimension, std::vector<std::uint64_t> solutions)
    : dimension_(dimension), solutions_(std::move(solutions)) {
    if (dimension_ == 0) throw std::invalid_argument("oracle dimension must be >= 1");
    std::sort(solutions_.begin(), solutions_.end());
    solutions_.erase(std::unique(solutions_.begin(), solutions_.end()), solutions_.end());
    if (!solutions_.empty() && solutions_.back() >= dimension_)
        throw std::out_of_range("solution index " + std::to_string(solutions_.back()) +
                                " outside [0, " + std::to_string(dimension_) + ")");
}

ProblemShape OracleSpec::shape() const {
    return make_shape(static_cast<std::int64_t>(dimension_), static_cast<std::int64_t>(solutions_.size()));
}

bool OracleSpec::contains(std::uint64_t i) const {
    return std::binary_search(solutions_.begin(), solutions_.end(), i);
}

bool OracleSpec::lookup(std::uint64_t i) {
    ++query_count_;
    return contains(i);
}

// ---------------------------------------------------------------------------
// DiffusionOperator

namespace {

void require_matrix_size(std::uint64_t n) {
    if (n > DiffusionOperator::kMaxMatrixDimension)
        throw std::invalid_argument("explicit diffusion matrix limited to N <= " +
                                    std::to_string(DiffusionOperator::kMaxMatrixDimension));
}

// In-place unnormalized Walsh-Hadamard transform; self-inverse up to 1/N.
void fwht(std::span<cplx> a) {
    const std::size_t n = a.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t start = 0; start < n; start += 2 * len) {
            for (std::size_t i = start; i < start + len; ++i) {
                const cplx u = a[i];
                const cplx v = a[i + len];
                a[i] = u + v;
                a[i + len] = u - v;
            }
        }
    }
}

std::vector<cplx> mat_vec(std::span<const cplx> m, std::span<const cplx> v, bool adjoint) {
    const std::size_t n = v.size();
    std::vector<cplx> out(n, cplx{});
    for (std::size_t r = 0; r < n; ++r) {
        cplx acc{};
        for (std::size_t c = 0; c < n; ++c)
            acc += (adjoint ? std::conj(m[c * n + r]) : m[r * n + c]) * v[c];
        out[r] = acc;
    }
    return out;
}

void require_same_dimension(const StateVector& state, std::uint64_t n) {
    if (state.dimension() != n)
        throw std::invalid_argument("dimension mismatch: state " + std::to_string(state.dimension()) +
                                    " vs operator " + std::to_string(n));
}

void check_diffusion_matrix(std::span<const cplx> m, std::uint64_t n) {
    if (m.size() != n * n) throw std::invalid_argument("custom diffusion matrix must be N x N");
    if (unitarity_error(m, n) > kTolerances.unitary_entry)
        throw std::invalid_argument("custom diffusion matrix is not unitary");
    const double u = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint64_t r = 0; r < n; ++r)
        if (std::abs(m[r * n] - cplx(u, 0.0)) > kTolerances.unitary_entry)
            throw std::invalid_argument("custom diffusion matrix must map |0> to the uniform state");
}

}  // namespace

double unitarity_error(std::span<const cplx> m, std::uint64_t n) {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < n; ++j) {
            cplx acc{};
            for (std::uint64_t k = 0; k < n; ++k) acc += std::conj(m[k * n + i]) * m[k * n + j];
            worst = std::max(worst, std::abs(acc - cplx(i == j ? 1.0 : 0.0, 0.0)));
        }
    }
    return worst;
}

DiffusionOperator DiffusionOperator::walsh_hadamard(std::uint64_t dimension) {
    if (dimension == 0 || !std::has_single_bit(dimension))
        throw std::invalid_argument("Walsh-Hadamard diffusion needs N a power of two");
    return DiffusionOperator(DiffusionKind::walsh_hadamard, dimension);
}

DiffusionOperator DiffusionOperator::exact_dft(std::uint64_t dimension) {
    if (dimension == 0) throw std::invalid_argument("diffusion dimension must be >= 1");
    return DiffusionOperator(DiffusionKind::exact_dft, dimension);
}

DiffusionOperator DiffusionOperator::custom(std::uint64_t dimension, std::vector<cplx> matrix) {
    if (dimension == 0) throw std::invalid_argument("diffusion dimension must be >= 1");
    require_matrix_size(dimension);
    check_diffusion_matrix(matrix, dimension);
    return DiffusionOperator(DiffusionKind::custom, dimension, std::move(matrix));
}

DiffusionOperator DiffusionOperator::natural(std::uint64_t dimension) {
    return std::has_single_bit(dimension) ? walsh_hadamard(dimension) : exact_dft(dimension);
}

std::vector<cplx> DiffusionOperator::matrix() const {
    const std::uint64_t n = dimension_;
    require_matrix_size(n);
    if (kind_ == DiffusionKind::custom) return matrix_;

    std::vector<cplx> m(n * n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint64_t r = 0; r < n; ++r) {
        for (std::uint64_t c = 0; c < n; ++c) {
            if (kind_ == DiffusionKind::walsh_hadamard) {
                m[r * n + c] = (std::popcount(r & c) % 2 == 0 ? scale : -scale);
            } else {
                const double angle = 2.0 * kPi * static_cast<double>((r * c) % n) / static_cast<double>(n);
                m[r * n + c] = std::polar(scale, angle);
            }
        }
    }
    return m;
}

void DiffusionOperator::apply(StateVector& state) const {
    require_same_dimension(state, dimension_);
    const auto& k = kernels::active();
    const cplx mean = k.sum(state.amplitudes()) / static_cast<double>(dimension_);
    k.reflect(state.amplitudes(), mean);
}

void DiffusionOperator::apply_via_transform(StateVector& state) const {
    require_same_dimension(state, dimension_);
    std::span<cplx> a = state.amplitudes();
    const double n = static_cast<double>(dimension_);

    switch (kind_) {
        case DiffusionKind::walsh_hadamard: {
            const double s = 1.0 / std::sqrt(n);
            fwht(a);
            for (cplx& v : a) v *= s;
            a[0] = -a[0];
            fwht(a);
            for (cplx& v : a) v *= -s;
            return;
        }
        case DiffusionKind::exact_dft: {
            fft::idft(a);
            a[0] = -a[0];
            fft::dft(a);
            for (cplx& v : a) v = -v;
            return;
        }
        case DiffusionKind::custom: {
            std::vector<cplx> v = mat_vec(matrix_, a, /*adjoint=*/true);
            v[0] = -v[0];
            v = mat_vec(matrix_, v, /*adjoint=*/false);
            for (std::size_t i = 0; i < v.size(); ++i) a[i] = -v[i];
            return;
        }
    }
}

void DiffusionOperator::apply_via_matrix(StateVector& state) const {
    require_same_dimension(state, dimension_);
    const std::uint64_t n = dimension_;
    const std::vector<cplx> t = matrix();

    // D = -(T S_0 T^dagger), S_0 = diag(-1, 1, ..., 1).
    std::vector<cplx> d(n * n);
    for (std::uint64_t r = 0; r < n; ++r) {
        for (std::uint64_t c = 0; c < n; ++c) {
            cplx acc{};
            for (std::uint64_t k = 0; k < n; ++k) {
                const double s0 = k == 0 ? -1.0 : 1.0;
                acc += t[r * n + k] * s0 * std::conj(t[c * n + k]);
            }
            d[r * n + c] = -acc;
        }
    }
    const std::vector<cplx> out = mat_vec(d, state.amplitudes(), /*adjoint=*/false);
    std::copy(out.begin(), out.end(), state.amplitudes().begin());
}

DiffusionOperator random_diffusion(std::uint64_t dimension, Rng& rng) {
    const std::uint64_t n = dimension;
    require_matrix_size(n);
    // Gram-Schmidt on columns, first column fixed to the uniform vector.
    std::vector<std::vector<cplx>> cols;
    cols.emplace_back(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    while (cols.size() < n) {
        std::vector<cplx> v(n);
        for (cplx& x : v) x = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        // Two passes keep the basis orthogonal to working precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : cols) {
                cplx dot{};
                for (std::uint64_t i = 0; i < n; ++i) dot += std::conj(q[i]) * v[i];
                for (std::uint64_t i = 0; i < n; ++i) v[i] -= dot * q[i];
            }
        }
        double norm = 0.0;
        for (const cplx& x : v) norm += std::norm(x);
        norm = std::sqrt(norm);
        if (norm < 1e-6) continue;
        for (cplx& x : v) x /= norm;
        cols.push_back(std::move(v));
    }
    std::vector<cplx> m(n * n);
    for (std::uint64_t c = 0; c < n; ++c)
        for (std::uint64_t r = 0; r < n; ++r) m[r * n + c] = cols[c][r];
    return DiffusionOperator::custom(n, std::move(m));
}

// ---------------------------------------------------------------------------
// Operations

void apply_phase_flip(StateVector& state, std::span<const std::uint64_t> indices) {
    for (std::uint64_t i : indices) {
        if (i >= state.dimension()) throw std::out_of_range("phase flip index out of range");
    }
    for (std::uint64_t i : indices) state[i] = -state[i];
}

void apply_phase_flip(StateVector& state, OracleSpec& oracle) {
    require_same_dimension(state, oracle.dimension());
    apply_phase_flip(state, oracle.solutions());
    oracle.add_queries(1);
}

void apply_diffusion(StateVector& state, const DiffusionOperator& op) { op.apply(state); }

void grover_iterate(StateVector& state, OracleSpec& oracle, const DiffusionOperator& op) {
    apply_phase_flip(state, oracle);
    // Uncomputing the looked-up value costs a second lookup.
    oracle.add_queries(1);
    apply_diffusion(state, op);
}

std::uint64_t measure(const StateVector& state, Rng& rng) {
    const double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > kTolerances.measure_norm)
        throw std::domain_error("measure: state is not normalized (norm^2 = " + std::to_string(norm) + ")");
    const double u = rng.uniform() * norm;
    double acc = 0.0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        const double p = state.probability(i);
        if (p > 0.0) last_nonzero = i;
        acc += p;
        if (u < acc) return i;
    }
    return last_nonzero;
}

namespace {

struct Recurrence {
    double a, b, c;

    explicit Recurrence(const ProblemShape& shape) {
        const double n = static_cast<double>(shape.table_size);
        const double t = static_cast<double>(shape.solution_count);
        a = (n - 2.0 * t) / n;
        b = 2.0 * (n - t) / n;
        c = 2.0 * t / n;
    }
    AmplitudePair step(AmplitudePair p) const { return {a * p.k + b * p.l, a * p.l - c * p.k}; }
};

AmplitudePair collapsed_start(const ProblemShape& shape) {
    if (shape.empty()) throw std::domain_error("collapsed simulation: t must be >= 1");
    const double u = 1.0 / std::sqrt(static_cast<double>(shape.table_size));
    return {u, u};
}

}  // namespace

AmplitudePair collapsed_simulate(const ProblemShape& shape, std::uint64_t iterations) {
    AmplitudePair p = collapsed_start(shape);
    const Recurrence rec(shape);
    for (std::uint64_t j = 0; j < iterations; ++j) p = rec.step(p);
    if (shape.full()) p.l = 0.0;
    return p;
}

std::vector<AmplitudePair> collapsed_trajectory(const ProblemShape& shape, std::uint64_t count) {
    AmplitudePair p = collapsed_start(shape);
    const Recurrence rec(shape);
    std::vector<AmplitudePair> out;
    out.reserve(count);
    for (std::uint64_t j = 0; j < count; ++j) {
        out.push_back(shape.full() ? AmplitudePair{p.k, 0.0} : p);
        p = rec.step(p);
    }
    return out;
}

namespace {

// r-th index (0-based) of [0, N) \ A, with A sorted.
std::uint64_t nth_unmarked(std::span<const std::uint64_t> marked, std::uint64_t r) {
    std::uint64_t candidate = r;
    for (std::uint64_t m : marked) {
        if (m <= candidate)
            ++candidate;
        else
            break;
    }
    return candidate;
}

}  // namespace

std::uint64_t run_and_measure(OracleSpec& oracle, const DiffusionOperator& op, std::uint64_t iterations,
                              Backend backend, Rng& rng) {
    if (backend == Backend::statevector) {
        StateVector state = StateVector::uniform(oracle.dimension());
        for (std::uint64_t j = 0; j < iterations; ++j) grover_iterate(state, oracle, op);
        return measure(state, rng);
    }

    oracle.add_queries(2 * iterations);
    const std::uint64_t n = oracle.dimension();
    const std::uint64_t t = oracle.solution_count();
    double p_marked = 0.0;
    if (t > 0) {
        const AmplitudePair amp = collapsed_simulate(oracle.shape(), iterations);
        p_marked = std::min(1.0, static_cast<double>(t) * amp.k * amp.k);
    }
    if (t == n || (t > 0 && rng.uniform() < p_marked)) return oracle.solutions()[rng.below(t)];
    return nth_unmarked(oracle.solutions(), rng.below(n - t));
}

}  // namespace glab
