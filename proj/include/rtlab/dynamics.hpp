#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rtlab/probe.hpp"

namespace rtlab {

/// Circle rotation x -> x + alpha (mod 1); n alpha reduced with an fma
/// compensation term so orbits stay accurate to ~1e-15 at n = 1e6.
struct RotationOrbit {
    double x0 = 0;
    double alpha = 0;
    double state(long n) const;
};

/// Doubling map driven by a seeded bit stream (float iteration would collapse
/// after 53 steps); state n reads 53 bits starting at position n.
class DoublingOrbit {
  public:
    DoublingOrbit(std::uint64_t seed, std::size_t horizon);
    double state(long n) const;
    std::size_t horizon() const { return bits_.size() > 64 ? bits_.size() - 64 : 0; }

  private:
    std::vector<bool> bits_;
};

/// Shift y -> y + 1 on Z_K.
struct CyclicOrbit {
    long K = 2;
    long y0 = 0;
    long state(long n) const { return ((y0 + n) % K + K) % K; }
};

/// Cached weights w_n = f(tau^n x) over [n_lo, n_hi].
struct OrbitWeights {
    long n_lo = 0;
    std::vector<cplx> w;
    cplx at(long n) const { return w[std::size_t(n - n_lo)]; }

    template <typename Orbit, typename F>
    static OrbitWeights build(const Orbit& orb, F&& f, long n_lo, long n_hi) {
        OrbitWeights out;
        out.n_lo = n_lo;
        out.w.reserve(std::size_t(n_hi - n_lo + 1));
        for (long n = n_lo; n <= n_hi; ++n) out.w.push_back(f(orb.state(n)));
        return out;
    }
};

/// (1/N) sum_{n=0}^{N-1} f(tau^n x) g(sigma^n y)
cplx return_avg(const OrbitWeights& fw, const OrbitWeights& gw, long N);

/// primed sum_{n=-N}^{N} f(tau^n x) g(sigma^n y) / n
cplx hilbert_series(const OrbitWeights& fw, const OrbitWeights& gw, long N);

/// (1/N) sum_{n<N} f(tau^n x) e^{2 pi i n theta}
cplx wiener_wintner(const OrbitWeights& fw, double theta, long N);

/// primed sum_{n=-N}^{N} f(tau^n x) / n
cplx cotlar_series(const OrbitWeights& fw, long N);

/// |S(2^(m+1)) - S(2^m)| for m = m_lo..m_hi-1, computed incrementally from a
/// per-n term callback (n runs over both signs).
std::vector<double> lacunary_cauchy_diffs(const std::function<cplx(long)>& term, int m_lo,
                                          int m_hi);

/// || sup_{N <= N_max} |(1/N) sum_{n<N} w_n g(y+n)| ||_{l^2_y(Z_K)} maximized
/// over the probe protocol; a certified lower bound of the operator norm.
struct MaxReturnResult {
    double value = 0;
    int probes_used = 0;
};
MaxReturnResult max_return_norm(const OrbitWeights& fw, long K, long N_max,
                                const ProbeProtocol& proto, Rng& rng);

/// Best-constant functional of the transfer argument: the least C with
/// ||sup_N (1/N) sum_b phi(a+b) psi(c+b)||_{l^2_c} <= C ||psi||_{l^2}, probed
/// from below over psi.
double transfer_best_constant(const std::vector<double>& phi, long a, long N_max,
                              const ProbeProtocol& proto, Rng& rng);

std::string system_json(const std::string& kind, double alpha, long K, std::uint64_t seed);
std::string orbit_csv(const OrbitWeights& fw);

}  // namespace rtlab
