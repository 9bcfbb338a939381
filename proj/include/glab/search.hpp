#pragma once

// Search strategies built on the simulator:
//   - known t, run floor(pi / 4 theta) iterations and measure once;
//   - known t, stop early at the expected-cost optimum and restart on failure;
//   - unknown t, randomized iteration counts with geometrically growing range,
//     classical pre-sampling for very dense tables and a total-iteration
//     time-out for empty ones.
// Every measured candidate is confirmed by one classical lookup before it is
// reported, so success always implies a genuine solution.

#include <cstdint>
#include <optional>
#include <vector>

#include "glab/analytics.hpp"
#include "glab/rng.hpp"
#include "glab/simulator.hpp"

namespace glab {

struct SearchOutcome {
    std::optional<std::uint64_t> found_index;
    bool success = false;
    std::uint64_t grover_iterations_used = 0;
    std::uint64_t oracle_lookups_used = 0;  // 2 * grover + classical
    std::uint64_t classical_probes_used = 0;
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;

    bool operator==(const SearchOutcome&) const = default;
};

// One pass of the unknown-t main loop.
struct RoundTrace {
    double m = 0.0;
    std::uint64_t iterations = 0;
};

struct SearchOptions {
    Backend backend = Backend::statevector;
};

// Throws std::domain_error for t = 0.
SearchOutcome search_known_t(OracleSpec& oracle, std::uint64_t t, Rng& rng, SearchOptions options = {});

inline constexpr std::uint64_t kDefaultMaxRestarts = 64;

// Makes at most 1 + max_restarts attempts. Throws std::domain_error for t = 0.
SearchOutcome search_restart_optimal(OracleSpec& oracle, std::uint64_t t, Rng& rng,
                                     std::uint64_t max_restarts = kDefaultMaxRestarts,
                                     SearchOptions options = {});

struct UnknownTConfig {
    double lambda = 6.0 / 5.0;
    double m_cap = 1.0;                          // sqrt(N)
    std::uint64_t classical_presample_count = 10;
    std::uint64_t timeout_total_iterations = 0;  // ceil(4.5 sqrt(N))
    Backend backend = Backend::statevector;

    static UnknownTConfig defaults(std::uint64_t table_size);
    // Throws std::invalid_argument unless 1 < lambda < 4/3 and m_cap >= 1.
    void validate() const;
};

SearchOutcome search_unknown_t(OracleSpec& oracle, const UnknownTConfig& config, Rng& rng,
                               std::vector<RoundTrace>* trace = nullptr);

// Monte Carlo version of the averaged-success experiment: j uniform in
// [0, m), then a measurement whose solution probability comes from the
// collapsed simulator. Returns the empirical success rate.
double average_success_check(const ProblemShape& shape, std::uint64_t m, Rng& rng, std::uint64_t trials);

}  // namespace glab
