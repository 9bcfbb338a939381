#include <atomic>
#include <cstdlib>
#include <string>

#include "glab/kernels.hpp"

namespace glab::kernels {

namespace {

const Table kScalar{Level::scalar, &scalar::sum, &scalar::norm_squared, &scalar::reflect,
                    &scalar::scale};

#ifdef GLAB_HAVE_AVX2_KERNELS
const Table kAvx2{Level::avx2, &avx2::sum, &avx2::norm_squared, &avx2::reflect, &avx2::scale};

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Table* detect() {
    const char* forced = std::getenv("GLAB_KERNELS");
    if (forced != nullptr && std::string(forced) == "scalar") return &kScalar;
    if (const Table* t = avx2_table()) return t;
    return &kScalar;
}

std::atomic<const Table*>& slot() {
    static std::atomic<const Table*> current{detect()};
    return current;
}

}  // namespace

const Table& scalar_table() { return kScalar; }

const Table* avx2_table() {
#ifdef GLAB_HAVE_AVX2_KERNELS
    static const bool ok = cpu_has_avx2();
    return ok ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const Table& active() { return *slot().load(std::memory_order_acquire); }

bool select(Level level) {
    const Table* t = level == Level::scalar ? &kScalar : avx2_table();
    if (t == nullptr) return false;
    slot().store(t, std::memory_order_release);
    return true;
}

std::string_view name(Level level) { return level == Level::scalar ? "scalar" : "avx2"; }

}  // namespace glab::kernels
