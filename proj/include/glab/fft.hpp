#pragma once

// Unitary discrete Fourier transforms.
//
//   dft:   b[v] = (1/sqrt(n)) sum_j a[j] exp(+2 pi i j v / n)
//   idft:  the inverse (negative exponent), also unitary.
//
// Any length; backed by FFTW with plans cached per (length, direction).

#include <complex>
#include <cstddef>
#include <span>

namespace glab::fft {

using cplx = std::complex<double>;

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

void dft(std::span<cplx> data);
void idft(std::span<cplx> data);

// Unnormalized transform with exponent sign `sign` (+1 or -1).
void transform(std::span<cplx> data, int sign);

}  // namespace glab::fft
