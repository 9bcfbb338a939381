#pragma once

// Seeded Monte Carlo harness. Trial i always receives Rng::substream(seed, i)
// and results are returned in trial order, so output does not depend on the
// number of workers or on completion order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "glab/rng.hpp"

namespace glab {

unsigned default_workers();

template <typename Fn>
auto run_trials(std::uint64_t count, std::uint64_t seed, Fn fn, unsigned workers = default_workers())
    -> std::vector<decltype(fn(std::uint64_t{}, std::declval<Rng&>()))> {
    using Result = decltype(fn(std::uint64_t{}, std::declval<Rng&>()));
    std::vector<Result> results(count);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                Rng rng = Rng::substream(seed, i);
                results[i] = fn(i, rng);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(count, 1024))));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace glab
