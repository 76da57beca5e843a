#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace rtlab {

/// Catalog kernel with both sides available: K on the line and K-hat on the
/// frequency axis. inverse_y keeps K(y) = 1/y exactly for |y| >= 1, which the
/// discrete kernels below rely on.
struct Kernel {
    std::string name;
    std::function<std::complex<double>(double)> fourier;  // K-hat(xi)
    std::function<double(double)> space;                  // K(y)
    bool exact_inverse_tail = false;                      // K(y) = 1/y for |y| >= 1
};

/// names: inverse_y, bump, poisson
Kernel make_kernel(const std::string& name);

/// C-infinity bump, 1 at 0, support (-1,1): exp(1 - 1/(1-y^2)).
double smooth_bump(double y);

/// Order-7 polynomial smoothstep on [0,1] (0 -> 0, 1 -> 1).
double smoothstep7(double t);

struct AdmissibilityReport {
    double C_size = 0;                  // sup |K^(xi)| / min(1, 1/|xi|)
    double C_vanish = 0;                // sup |K^(xi)| / min(|xi|, 1/|xi|); finite only if K^(0) = 0
    std::vector<double> C_deriv;        // per n: sup |d^n K^| |xi|^n / min(|xi|, 1/|xi|)
    int n_max = 0;
};

/// Minimal admissible constants measured on the given samples; derivatives by
/// central finite differences with step scaled to |xi|.
AdmissibilityReport check_admissible(const Kernel& k, const std::vector<double>& xi_samples,
                                     int n_max);

struct EtaHat {
    std::complex<double> right_limit;  // K-hat(0+)
    std::complex<double> left_limit;   // K-hat(0-)
    std::complex<double> operator()(double xi) const;
};

/// Low-frequency cap of K-hat: the one-sided limits on +-(0, 1/8], a fixed
/// polynomial-smoothstep ramp on +-(1/8, 3/8), zero outside [-3/8, 3/8].
EtaHat build_eta(const Kernel& k);

/// psi_i(xi) = psi(2^i xi) - psi(2^(i+1) xi).
std::complex<double> lp_piece(const std::function<std::complex<double>(double)>& psi, int i,
                              double xi);

/// The canonical plateau profile: 1 for xi <= 1/8, smoothstep down to 0 at
/// 3/8; its differences live on [2^-i/16, 3 2^-i/8].
double plateau_psi(double xi);

/// Annulus bump with the exact dyadic partition sum_j q(xi / 2^j) = 1 for
/// xi != 0, by dividing a positive bump by its own dyadic periodization.
double annulus_partition_q(double xi);

struct DiscreteKernels {
    int k = 1;
    long radius = 0;  // table covers |i| <= radius = 2^(k+6)
    std::vector<double> H, A, S, O;

    double at(const std::vector<double>& v, long i) const;
    double h(long i) const { return at(H, i); }
    double a(long i) const { return at(A, i); }
    double s(long i) const { return at(S, i); }
    double o(long i) const { return at(O, i); }
};

/// Integer samples of the step-function surrogate for Dil_{2^k} K and its
/// window/tail split: A = H on [-2^k, 2^k], S(i) = 1/i there, O = A - S.
DiscreteKernels discrete_kernels(const Kernel& kern, int k);

/// H_k as a function on the line (piecewise constant on [i, i+1)).
double h_k_step(const Kernel& kern, int k, double y);

struct ApproxErrorReport {
    double inner_sup = 0;  // sup_{|y|<=2^k} 2^{2k} |H_k - Dil K|
    double outer_sup = 0;  // sup_{2^k<|y|<=2^{k+6}} y^2 |H_k - Dil K|
};

ApproxErrorReport kernel_approx_error(const Kernel& kern, int k);

struct SbpWeights {
    std::vector<double> w;  // w[n-1] = n (A_k(n) - A_k(n+1)), n = 1..2^k
    double abs_sum = 0;
};

SbpWeights summation_by_parts_weights(const Kernel& kern, int k);

/// (H_a - H_b) - ((A_a - S_a) - (A_b - S_b)) evaluated in exact rational
/// arithmetic over the stored doubles; zero for consistent tables.
bool o_identity_holds(const DiscreteKernels& a, const DiscreteKernels& b, long i);

std::string discrete_kernels_csv(const DiscreteKernels& dk);

}  // namespace rtlab
