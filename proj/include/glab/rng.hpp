#pragma once

#include <cstdint>
#include <random>

namespace glab {

// Portable random stream: std::mt19937_64 (output sequence fixed by the
// standard) plus hand-written conversions, so draws are identical across
// standard libraries. std::uniform_*_distribution is implementation-defined
// and deliberately not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    // Independent substream for trial `index` of a run seeded with `seed`.
    static Rng substream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

// SplitMix64 finalizer; used to decorrelate (seed, index) pairs.
std::uint64_t mix64(std::uint64_t x);

}  // namespace glab
