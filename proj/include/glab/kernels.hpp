#pragma once

// Data-parallel inner loops of the statevector simulator.
//
// Every kernel has a scalar reference version and, on x86-64, an AVX2+FMA
// version compiled in its own translation unit. The active table is chosen
// once at startup from CPUID; GLAB_KERNELS=scalar in the environment forces
// the reference path. Reductions in the vector path use a different
// summation order, so results agree with the scalar path to rounding only.

#include <complex>
#include <span>
#include <string_view>

namespace glab::kernels {

using cplx = std::complex<double>;

enum class Level { scalar, avx2 };

struct Table {
    Level level;
    cplx (*sum)(std::span<const cplx>);
    double (*norm_squared)(std::span<const cplx>);
    // a[i] = 2 * mean - a[i]
    void (*reflect)(std::span<cplx>, cplx mean);
    void (*scale)(std::span<cplx>, double);
};

namespace scalar {
cplx sum(std::span<const cplx> a);
double norm_squared(std::span<const cplx> a);
void reflect(std::span<cplx> a, cplx mean);
void scale(std::span<cplx> a, double factor);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GLAB_HAVE_AVX2_KERNELS 1
namespace avx2 {
cplx sum(std::span<const cplx> a);
double norm_squared(std::span<const cplx> a);
void reflect(std::span<cplx> a, cplx mean);
void scale(std::span<cplx> a, double factor);
}  // namespace avx2
#endif

const Table& scalar_table();
// Null when the CPU or build lacks AVX2.
const Table* avx2_table();

const Table& active();
// Test hook; returns false if the requested level is unavailable.
bool select(Level level);

std::string_view name(Level level);

}  // namespace glab::kernels
