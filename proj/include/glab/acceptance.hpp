#pragma once

// End-to-end acceptance checks reproducing the published numbers. Each
// criterion runs at its pinned tolerance and reports a single verdict.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace glab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20261018;
    std::vector<int> only;  // empty = all
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult(std::uint64_t seed)> run;
};

const std::vector<Criterion>& acceptance_criteria();

// Runs the selected criteria, printing one line per criterion to `log` as
// each completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log);

}  // namespace glab
