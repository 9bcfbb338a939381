#pragma once

// Query lower bounds for bounded-error quantum search and how Grover's
// algorithm compares with them.

#include <cstdint>

#include "glab/rng.hpp"

namespace glab {

struct BoundReport {
    std::uint64_t N = 0;
    std::uint64_t t = 0;
    std::uint64_t lower_bound_queries = 0;
    double grover_queries_50pct = 0.0;  // 2 * smallest j with success >= 1/2
    double ratio = 0.0;                 // +inf when the bound is 0
    bool degenerate = false;            // lower bound is 0
};

// floor(sin(pi/8) sqrt(N)).
std::uint64_t lower_bound_unique(std::uint64_t N);

// floor(sin(pi/8) sqrt(floor(N/t))). Throws std::domain_error for t = 0 or t > N.
std::uint64_t lower_bound_multi(std::uint64_t N, std::uint64_t t);

// Smallest j with sin^2((2j+1) theta) >= 1/2.
std::uint64_t iterations_for_half(std::uint64_t N, std::uint64_t t);

BoundReport compare_grover_to_bound(std::uint64_t N, std::uint64_t t);

// (pi/4) / sin(pi/8): the large-N limit of the ratio for t = 1.
double asymptotic_ratio();

struct PropositionReport {
    bool ok = true;
    std::uint64_t instances = 0;
    double worst_prop1_gap = 0.0;  // min over instances of lhs - rhs (>= -slack)
    double worst_prop2_gap = 0.0;  // min over instances of rhs - lhs
};

// Checks on `trials` random instances (dimensions <= 64):
//   ||alpha a - beta b||^2 >= |alpha|^2 + |beta|^2 - 2 |alpha| |beta|  (unit a, b)
//   (sum |x_i|)^2 <= r sum |x_i|^2
PropositionReport proposition_checks(Rng& rng, std::uint64_t trials);

}  // namespace glab
