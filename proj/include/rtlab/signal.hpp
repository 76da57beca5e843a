#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rtlab/fft.hpp"

namespace rtlab {

/// Complex samples on a uniform grid x_m = origin + m * spacing, n a power of 2.
struct SampledSignal {
    double origin = 0.0;
    double spacing = 1.0;
    cvec samples;
    bool truncated = false;  // set when an operation pushed support off-grid

    std::size_t size() const { return samples.size(); }
    double x(std::size_t m) const { return origin + double(m) * spacing; }
    double span() const { return double(size()) * spacing; }

    static SampledSignal zeros(double origin, double spacing, std::size_t n);
    static SampledSignal from_function(double origin, double spacing, std::size_t n,
                                       const std::function<cplx(double)>& f);
};

/// Frequency-side twin on the grid dual to (origin, spacing, n):
/// xi_j = -1/(2 spacing) + j / (n spacing).
struct Spectrum {
    double origin = 0.0;   // leftmost frequency
    double spacing = 0.0;  // frequency step 1/(n dx)
    cvec samples;
    double time_origin = 0.0;  // carried so the inverse lands on the same grid
    double time_spacing = 1.0;

    std::size_t size() const { return samples.size(); }
    double xi(std::size_t j) const { return origin + double(j) * spacing; }
};

/// Riemann-sum realization of f^(xi) = int f(x) e^(-2 pi i xi x) dx.
Spectrum transform(const SampledSignal& f);
SampledSignal inverse(const Spectrum& F);

double l2_norm(const SampledSignal& f);
double l2_norm(const Spectrum& F);
double lp_norm(const SampledSignal& f, double p);
double l1_norm(const SampledSignal& f);

/// Trig-polynomial (band-limited) evaluation of f at an arbitrary point.
cplx eval_interpolated(const SampledSignal& f, double x);
cplx eval_spectrum(const Spectrum& F, double x);

/// Dil_s^p f(x) = s^(-1/p) f(x/s)   (band-limited resampling off-grid)
/// Tr_y f(x)    = f(x - y)
/// Mod_t f(x)   = e^(2 pi i t x) f(x)
SampledSignal dil(const SampledSignal& f, double s, double p);
SampledSignal tr(const SampledSignal& f, double y);
SampledSignal mod(const SampledSignal& f, double theta);

/// chi_I(x)^M with chi_I(x) = (1 + |x - c(I)| / |I|)^(-1).
double chi_weight(double center, double length, double x, int M = 1);

/// (sup_r (1/r) int_{|t|<=r} |f(x+t)|^p dt)^(1/p), radii on the sample grid.
SampledSignal maximal_p(const SampledSignal& f, double p);

/// sup over dyadic subintervals of the span of the mean oscillation; a lower
/// bound for the sup over all intervals.
double bmo_norm(const SampledSignal& f);

struct AdaptedReport {
    std::vector<int> M_list;
    std::vector<double> A;  // minimal admissible constant per M
};

/// Measures the smallest A(M) with |phi| <= A C |I|^(-1/2) chi^M and
/// |phi'| <= A C |I|^(-3/2) chi^M at all samples; derivative by centered
/// differences when not supplied.
AdaptedReport adapted_check(const SampledSignal& phi, double center, double length, double C,
                            const std::vector<int>& M_list,
                            const SampledSignal* dphi = nullptr);

/// Spectral multiplier e^(-t |xi|).
SampledSignal poisson(const SampledSignal& f, double t);

/// |int phi(x) e^(-i c x) dx|; this convention carries no 2 pi factor.
double mean_zero_defect(const SampledSignal& phi, double c);

std::string signal_csv(const SampledSignal& f);
SampledSignal signal_from_csv(const std::string& text);
std::vector<unsigned char> signal_binary(const SampledSignal& f);
SampledSignal signal_from_binary(const std::vector<unsigned char>& bytes);

}  // namespace rtlab
