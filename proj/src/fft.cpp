#include "rtlab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace rtlab {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(cvec& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // exact-trig twiddle table; recurrences would drift at large n
    static const double TWO_PI = 6.283185307179586476925286766559;
    cvec tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double ang = sign * TWO_PI * double(k) / double(n);
        tw[k] = cplx(std::cos(ang), std::sin(ang));
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * tw[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

cvec fft_forward(cvec a) {
    fft_radix2(a, -1);
    return a;
}

cvec fft_inverse(cvec a) {
    fft_radix2(a, +1);
    const double inv = 1.0 / double(a.size());
    for (auto& z : a) z *= inv;
    return a;
}

}  // namespace rtlab
