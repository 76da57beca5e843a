#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "rtlab/signal.hpp"

namespace rtlab {

/// Analysis window: phi-hat = b-hat / sqrt(sum of shifted squares) for a fixed
/// positive bump b-hat on (0, 2/41), so the squares of the 1/41-shifts of
/// phi-hat partition unity exactly and ||phi||_2 = 41^(-1/2).
class Window {
  public:
    static const Window& instance();

    /// supported in [0, 2/41], real nonnegative
    double phi_hat(double xi) const;

    /// pointwise window value by quadrature of the inverse transform
    cplx phi_direct(double t) const;

    /// cached lattice sampling: phi(j * spacing) for |j| <= half_n
    struct Lattice {
        double spacing = 0;
        long half_n = 0;
        cvec vals;  // index j + half_n
        cplx at(long j) const {
            if (j < -half_n || j > half_n) return {};
            return vals[std::size_t(j + half_n)];
        }
    };
    std::shared_ptr<const Lattice> lattice(double spacing, double half_range) const;

  private:
    Window() = default;
    mutable std::mutex mu_;
    mutable std::map<std::pair<double, double>, std::shared_ptr<const Lattice>> cache_;
};

/// One-variable wave packet 2^(-i/2) phi(2^-i x - m) e^(2 pi i a x) sampled on
/// the grid of `proto`; a = 2^-i l / 41 for the 41-adic family.
/// Requires origin/spacing aligned so 2^-i x - m lands on a window lattice.
SampledSignal wave_packet(long i, long m, long l, const SampledSignal& proto);

/// Same packet with an arbitrary modulation frequency a.
SampledSignal wave_packet_mod(long i, long m, double a, const SampledSignal& proto);

/// Single-scale analysis: c[(m,l)] = <f, phi_{i,m,l/41}> over the given ranges.
struct ScaleCoeffs {
    long i = 0;
    long m_lo = 0, m_hi = 0, l_lo = 0, l_hi = 0;
    std::vector<cplx> c;  // row-major over (m, l)
    cplx at(long m, long l) const {
        return c[std::size_t((m - m_lo) * (l_hi - l_lo + 1) + (l - l_lo))];
    }
};

ScaleCoeffs analyze_scale(const SampledSignal& f, long i, long m_lo, long m_hi, long l_lo,
                          long l_hi);

/// Sum of coeff * packet over entries with |coeff| > threshold * ||f||_2.
SampledSignal reconstruct_scale(const ScaleCoeffs& coeffs, const SampledSignal& proto,
                                double threshold_rel, double f_l2);

double coeff_energy(const ScaleCoeffs& coeffs);

/// Two-variable packet profile Phi(X, Theta) = int psi0(Theta - u) phi-hat(u)
/// e^(2 pi i u X) du, with psi0(v) = plateau(v) - plateau(2v) supported in
/// [1/16, 3/8]. Tabulated once, bicubic interpolation.
class PacketProfile {
  public:
    static const PacketProfile& instance();

    cplx eval(double X, double Theta) const;

    /// phi_s(x, theta) for the packet at scale i, position m, modulation a:
    /// 2^(-i/2) e^(2 pi i a x) Phi(2^-i x - m, 2^i (theta - a)).
    cplx packet(long i, long m, double a, double x, double theta) const;

    /// exact slice phi_s(., theta) on the grid of `proto` via a dedicated
    /// transform at this theta (no table truncation/interpolation)
    static SampledSignal slice(long i, long m, double a, double theta,
                               const SampledSignal& proto);

    static double psi0(double v);

    // profile support in Theta: [1/16, 3/8 + 2/41]
    static constexpr double theta_lo = 0.0625;
    static constexpr double theta_hi = 0.375 + 2.0 / 41.0;

  private:
    PacketProfile();
    double th_step_ = 0, x_step_ = 0, x_max_ = 0;
    std::size_t nth_ = 0, nx_ = 0;
    cvec table_;  // row-major [theta][x]
};

}  // namespace rtlab
