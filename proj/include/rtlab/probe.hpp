#pragma once

#include <functional>
#include <vector>

#include "rtlab/fft.hpp"
#include "rtlab/rng.hpp"

namespace rtlab {

/// Shared lower-bound protocol for sup-over-unit-ball quantities of the form
///   sup_{||g||=1} ( sum_z weight * max_k |(A_k g)(z)|^2 )^(1/2):
/// seeded complex-Gaussian probes, the constant probe, pure frequencies, then
/// normalized ascent on the smooth surrogate with the max replaced by a p-max.
struct ProbeProtocol {
    int n_gauss = 512;
    int n_freq = 64;
    int ascent_steps = 50;
    double pmax = 20.0;
    double step = 0.25;
};

struct ProbeOperator {
    std::size_t dim = 0;       // probe vector length
    double weight_in = 1.0;    // quadrature weight of the g-norm
    double weight_out = 1.0;   // quadrature weight of the z-sum
    // h_k = A_k g for all k
    std::function<std::vector<cvec>(const cvec&)> apply;
    // adjoint of (r_k) -> sum_k A_k^* r_k; empty disables ascent
    std::function<cvec(const std::vector<cvec>&)> adjoint;
};

struct ProbeResult {
    double value = 0;       // certified lower bound (hard max, best probe)
    int probes_used = 0;
    bool ascent_ran = false;
};

ProbeResult probe_sup(const ProbeOperator& op, const ProbeProtocol& proto, Rng& rng);

double probe_norm(const cvec& g, double weight);

}  // namespace rtlab
