// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "glab/kernels.hpp"

namespace glab::kernels::avx2 {

namespace {

// std::complex<double> is layout-compatible with double[2].
const double* raw(std::span<const cplx> a) { return reinterpret_cast<const double*>(a.data()); }
double* raw(std::span<cplx> a) { return reinterpret_cast<double*>(a.data()); }

}  // namespace

cplx sum(std::span<const cplx> a) {
    const double* p = raw(a);
    const std::size_t n = a.size() * 2;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
    }
    if (i + 4 <= n) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
        i += 4;
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    // Lanes hold (re, im, re, im).
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    if (i < n) {
        re += p[i];
        im += p[i + 1];
    }
    return {re, im};
}

double norm_squared(std::span<const cplx> a) {
    const double* p = raw(a);
    const std::size_t n = a.size() * 2;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d x0 = _mm256_loadu_pd(p + i);
        const __m256d x1 = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
        acc1 = _mm256_fmadd_pd(x1, x1, acc1);
    }
    if (i + 4 <= n) {
        const __m256d x0 = _mm256_loadu_pd(p + i);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
        i += 4;
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) total += p[i] * p[i];
    return total;
}

void reflect(std::span<cplx> a, cplx mean) {
    double* p = raw(a);
    const std::size_t n = a.size() * 2;
    const double re = 2.0 * mean.real();
    const double im = 2.0 * mean.imag();
    const __m256d twice = _mm256_setr_pd(re, im, re, im);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(p + i, _mm256_sub_pd(twice, _mm256_loadu_pd(p + i)));
    }
    if (i < n) {
        p[i] = re - p[i];
        p[i + 1] = im - p[i + 1];
    }
}

void scale(std::span<cplx> a, double factor) {
    double* p = raw(a);
    const std::size_t n = a.size() * 2;
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(p + i, _mm256_mul_pd(f, _mm256_loadu_pd(p + i)));
    }
    for (; i < n; ++i) p[i] *= factor;
}

}  // namespace glab::kernels::avx2
