#pragma once

#include <complex>
#include <vector>

namespace rtlab {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// In-place radix-2 FFT, sign = -1 forward / +1 inverse (unnormalized).
/// Size must be a power of two.
void fft_radix2(cvec& a, int sign);

cvec fft_forward(cvec a);

/// Inverse with 1/n normalization, so fft_inverse(fft_forward(a)) == a.
cvec fft_inverse(cvec a);

bool is_pow2(std::size_t n);

}  // namespace rtlab
