#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zsfast {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// In-place radix-2 transform. Forward uses e^{-2πi jk/n}; inverse uses
// e^{+2πi jk/n} and divides by n. Size must be a power of two.
void fft(std::vector<cplx>& a, bool inverse = false);
void fft(cplx* a, std::size_t n, bool inverse = false);

}  // namespace zsfast
