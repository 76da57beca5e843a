#pragma once

#include <complex>
#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>

namespace rtlab {

// Deterministic generator with an explicit bit-level contract: the stream
// depends only on the (seed, stream-name) pair, never on libc distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // avoid the all-zero fixed point and decorrelate close seeds
        next_u64();
        next_u64();
    }

    /// Fixed splitting rule: stream = (root seed, experiment/stream name).
    static Rng derive(std::uint64_t seed, std::string_view name) {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
        for (unsigned char c : name) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return Rng(seed ^ h);
    }

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0,1), 53-bit mantissa
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    long integer(long lo, long hi) { return lo + long(below(std::uint64_t(hi - lo + 1))); }

    /// standard normal via Box-Muller (self-contained for reproducibility)
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    std::complex<double> cnormal() {
        double re = normal(), im = normal();
        return {re, im};
    }

    bool coin() { return (next_u64() & 1ull) != 0; }

  private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace rtlab
