// Runs every acceptance criterion and prints one pass/fail line each.
#include <iostream>

#include "glab/acceptance.hpp"

int main() {
    const auto results = glab::run_acceptance({}, std::cout);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}
