#include "glab/kernels.hpp"

namespace glab::kernels::scalar {

cplx sum(std::span<const cplx> a) {
    double re = 0.0;
    double im = 0.0;
    for (const cplx& v : a) {
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

double norm_squared(std::span<const cplx> a) {
    double acc = 0.0;
    for (const cplx& v : a) acc += v.real() * v.real() + v.imag() * v.imag();
    return acc;
}

void reflect(std::span<cplx> a, cplx mean) {
    const cplx twice = 2.0 * mean;
    for (cplx& v : a) v = twice - v;
}

void scale(std::span<cplx> a, double factor) {
    for (cplx& v : a) v *= factor;
}

}  // namespace glab::kernels::scalar
