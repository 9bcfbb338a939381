#include "glab/fft.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace glab::fft {

namespace {

static_assert(sizeof(cplx) == sizeof(fftw_complex), "std::complex<double> must alias fftw_complex");

// FFTW planning is not thread-safe but executing a finished plan on new
// arrays is, so plans are built once under a lock and shared. FFTW_UNALIGNED
// lets one plan serve any std::vector buffer.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign) {
        const std::lock_guard lock(mutex_);
        auto [it, inserted] = plans_.try_emplace({n, sign}, nullptr);
        if (inserted) {
            std::vector<cplx> scratch(n);
            auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
            it->second = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        return it->second;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void unitary(std::span<cplx> data, int sign) {
    transform(data, sign);
    const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
    for (cplx& x : data) x *= scale;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

std::size_t next_power_of_two(std::size_t n) { return std::bit_ceil(n); }

void transform(std::span<cplx> data, int sign) {
    if (data.size() <= 1) return;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(cache().get(data.size(), sign), p, p);
}

void dft(std::span<cplx> data) { unitary(data, +1); }

void idft(std::span<cplx> data) { unitary(data, -1); }

}  // namespace glab::fft
