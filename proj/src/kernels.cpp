#include "rtlab/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <gsl/gsl_sf_expint.h>

#include "rtlab/quadrature.hpp"
#include "rtlab/rational.hpp"

namespace rtlab {

static const double TWO_PI = 6.283185307179586476925286766559;
static const double PI = 3.1415926535897932384626433832795;

double smooth_bump(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

double smoothstep7(double t) {
    if (t <= 0) return 0;
    if (t >= 1) return 1;
    double t4 = t * t * t * t;
    return t4 * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

double plateau_psi(double xi) {
    // C-infinity ramp; the profile table inherits its smoothness, so the
    // x-decay of the two-variable packets stays superpolynomial
    if (xi <= 0.125) return 1.0;
    if (xi >= 0.375) return 0.0;
    double t = (xi - 0.125) / 0.25;
    double a = std::exp(-1.0 / (1.0 - t)), b = std::exp(-1.0 / t);
    return a / (a + b);
}

double annulus_partition_q(double xi) {
    double a = std::abs(xi);
    if (a == 0.0) return 0.0;
    auto bump = [](double v) {
        // positive on the annulus (1/8, 3/8), zero outside
        if (v <= 0.125 || v >= 0.375) return 0.0;
        double t = (v - 0.125) / 0.25;
        return std::exp(-1.0 / (t * (1.0 - t)));
    };
    // at most two dyadic dilates meet the annulus at any point
    double total = 0;
    int j0 = int(std::floor(std::log2(a / 0.125)));
    for (int j = j0 - 2; j <= j0 + 2; ++j) total += bump(std::ldexp(a, -j));
    return bump(a) / total;
}

namespace {

double inverse_y_space(double y) {
    if (y == 0.0) return 0.0;
    double b = smooth_bump(y);
    if (b == 0.0) return 1.0 / y;
    // (1 - b)/y, series-safe near 0: 1 - e^u with u = -y^2/(1-y^2)
    double u = -y * y / (1.0 - y * y);
    double one_minus_b = -std::expm1(u);
    return one_minus_b / y;
}

std::complex<double> inverse_y_fourier(double xi) {
    if (xi == 0.0) return {0.0, 0.0};
    double a = std::abs(xi);
    double inner = integrate_gl([a](double y) { return inverse_y_space(y) * std::sin(TWO_PI * a * y); },
                                0.0, 1.0, a);
    double tail = PI / 2 - gsl_sf_Si(TWO_PI * a);
    double im = -2.0 * (inner + tail);
    if (xi < 0) im = -im;
    return {0.0, im};
}

std::complex<double> bump_fourier(double xi) {
    return {smooth_bump(xi / 0.375), 0.0};
}

double bump_space(double y) {
    // inverse transform of the real even bump
    return 2.0 * integrate_gl(
                     [y](double xi) { return smooth_bump(xi / 0.375) * std::cos(TWO_PI * xi * y); },
                     0.0, 0.375, std::abs(y) * 0.375 + 1.0);
}

std::complex<double> poisson_fourier(double xi) { return {std::exp(-std::abs(xi)), 0.0}; }

double poisson_space(double y) { return 2.0 / (1.0 + TWO_PI * TWO_PI * y * y); }

}  // namespace

Kernel make_kernel(const std::string& name) {
    Kernel k;
    k.name = name;
    if (name == "inverse_y") {
        k.fourier = inverse_y_fourier;
        k.space = inverse_y_space;
        k.exact_inverse_tail = true;
    } else if (name == "bump") {
        k.fourier = bump_fourier;
        k.space = bump_space;
    } else if (name == "poisson") {
        k.fourier = poisson_fourier;
        k.space = poisson_space;
    } else {
        throw std::invalid_argument("unknown kernel: " + name +
                                    " (catalog: inverse_y, bump, poisson)");
    }
    return k;
}

AdmissibilityReport check_admissible(const Kernel& k, const std::vector<double>& xi_samples,
                                     int n_max) {
    AdmissibilityReport rep;
    rep.n_max = n_max;
    rep.C_deriv.assign(std::size_t(n_max), 0.0);
    // central-difference coefficients for d^n, n = 1..4, on stencil -4..4
    static const double stencils[4][9] = {
        {0, 0, 0, -0.5, 0, 0.5, 0, 0, 0},
        {0, 0, 0, 1, -2, 1, 0, 0, 0},
        {0, 0, -0.5, 1, 0, -1, 0.5, 0, 0},
        {0, 0, 1, -4, 6, -4, 1, 0, 0},
    };
    if (n_max > 4) throw std::invalid_argument("check_admissible: n_max <= 4 supported");
    for (double xi : xi_samples) {
        if (xi == 0.0) throw std::invalid_argument("check_admissible: xi = 0 not allowed");
        double axi = std::abs(xi);
        double cap = std::min(1.0, 1.0 / axi);
        double dcap0 = std::min(axi, 1.0 / axi);
        double kv = std::abs(k.fourier(xi));
        rep.C_size = std::max(rep.C_size, kv / cap);
        rep.C_vanish = std::max(rep.C_vanish, kv / dcap0);
        double h = axi / 64.0;  // derivative scale tracks |xi|
        double dcap = std::min(axi, 1.0 / axi);
        for (int n = 1; n <= n_max; ++n) {
            std::complex<double> d{};
            for (int s = -4; s <= 4; ++s) {
                double c = stencils[n - 1][s + 4];
                if (c != 0) d += c * k.fourier(xi + double(s) * h);
            }
            double dn = std::abs(d) / std::pow(h, n);
            rep.C_deriv[std::size_t(n - 1)] =
                std::max(rep.C_deriv[std::size_t(n - 1)], dn * std::pow(axi, n) / dcap);
        }
    }
    return rep;
}

std::complex<double> EtaHat::operator()(double xi) const {
    double a = std::abs(xi);
    if (a >= 0.375) return {0.0, 0.0};
    std::complex<double> level = (xi > 0) ? right_limit
                               : (xi < 0) ? left_limit
                                          : 0.5 * (right_limit + left_limit);
    if (a <= 0.125) return level;
    return level * (1.0 - smoothstep7((a - 0.125) / 0.25));
}

EtaHat build_eta(const Kernel& k) {
    EtaHat e;
    const double eps = 1e-7;
    e.right_limit = k.fourier(eps);
    e.left_limit = k.fourier(-eps);
    return e;
}

std::complex<double> lp_piece(const std::function<std::complex<double>(double)>& psi, int i,
                              double xi) {
    return psi(std::ldexp(xi, i)) - psi(std::ldexp(xi, i + 1));
}

double DiscreteKernels::at(const std::vector<double>& v, long i) const {
    if (i < -radius || i > radius) return 0.0;
    return v[std::size_t(i + radius)];
}

DiscreteKernels discrete_kernels(const Kernel& kern, int k) {
    if (k < 1) throw std::invalid_argument("discrete_kernels: k >= 1 required");
    DiscreteKernels dk;
    dk.k = k;
    dk.radius = 1l << (k + 6);
    const long R = dk.radius, W = 1l << k;
    dk.H.assign(std::size_t(2 * R + 1), 0.0);
    dk.A.assign(std::size_t(2 * R + 1), 0.0);
    dk.S.assign(std::size_t(2 * R + 1), 0.0);
    dk.O.assign(std::size_t(2 * R + 1), 0.0);
    const double scale = std::ldexp(1.0, -k);
    for (long i = -R; i <= R; ++i) {
        std::size_t at = std::size_t(i + R);
        double h = (i >= -W && i <= W - 1) ? scale * kern.space(double(i) * scale)
                                           : 1.0 / double(i);
        dk.H[at] = h;
        if (i >= -W && i <= W) {
            dk.A[at] = h;
            dk.S[at] = (i == 0) ? 0.0 : 1.0 / double(i);
            dk.O[at] = dk.A[at] - dk.S[at];
        }
    }
    return dk;
}

double h_k_step(const Kernel& kern, int k, double y) {
    long i = long(std::floor(y));
    const long W = 1l << k;
    if (i >= -W && i <= W - 1) return std::ldexp(kern.space(double(i) * std::ldexp(1.0, -k)), -k);
    return 1.0 / double(i);
}

ApproxErrorReport kernel_approx_error(const Kernel& kern, int k) {
    if (k < 1) throw std::invalid_argument("kernel_approx_error: k >= 1 required");
    ApproxErrorReport rep;
    const long W = 1l << k;
    const double scale = std::ldexp(1.0, -k);
    auto dil = [&](double y) { return scale * kern.space(y * scale); };
    // inner region: 16 offsets per unit step
    for (long i = -W; i < W; ++i) {
        for (int t = 0; t < 16; ++t) {
            double y = double(i) + (double(t) + 0.5) / 16.0;
            rep.inner_sup =
                std::max(rep.inner_sup, std::ldexp(std::abs(h_k_step(kern, k, y) - dil(y)), 2 * k));
        }
    }
    // outer region up to 2^(k+6), both signs
    for (long i = W; i < (1l << (k + 6)); ++i) {
        for (int t = 0; t < 4; ++t) {
            double y = double(i) + (double(t) + 0.5) / 4.0;
            double e = std::abs(h_k_step(kern, k, y) - dil(y));
            rep.outer_sup = std::max(rep.outer_sup, y * y * e);
            double ym = -y;
            double em = std::abs(h_k_step(kern, k, ym) - dil(ym));
            rep.outer_sup = std::max(rep.outer_sup, ym * ym * em);
        }
    }
    return rep;
}

SbpWeights summation_by_parts_weights(const Kernel& kern, int k) {
    auto dk = discrete_kernels(kern, k);
    SbpWeights out;
    const long W = 1l << k;
    out.w.reserve(std::size_t(W));
    for (long n = 1; n <= W; ++n) {
        double w = double(n) * (dk.a(n) - dk.a(n + 1));
        out.w.push_back(w);
        out.abs_sum += std::abs(w);
    }
    return out;
}

bool o_identity_holds(const DiscreteKernels& a, const DiscreteKernels& b, long i) {
    // stored doubles are exact rationals; the shared S atoms cancel exactly
    Rat lhs = Rat(a.h(i)) - Rat(b.h(i));
    Rat rhs = (Rat(a.a(i)) - Rat(a.s(i))) - (Rat(b.a(i)) - Rat(b.s(i)));
    return lhs == rhs;
}

std::string discrete_kernels_csv(const DiscreteKernels& dk) {
    std::ostringstream os;
    os.precision(17);
    os << "k,n,H,A,S,O\n";
    for (long i = -dk.radius; i <= dk.radius; ++i)
        os << dk.k << "," << i << "," << dk.h(i) << "," << dk.a(i) << "," << dk.s(i) << ","
           << dk.o(i) << "\n";
    return os.str();
}

}  // namespace rtlab
