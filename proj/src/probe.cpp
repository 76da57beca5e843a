#include "rtlab/probe.hpp"

#include <cmath>

namespace rtlab {

double probe_norm(const cvec& g, double weight) {
    double s = 0;
    for (auto z : g) s += std::norm(z);
    return std::sqrt(s * weight);
}

namespace {

double hard_value(const ProbeOperator& op, const cvec& g) {
    double gn = probe_norm(g, op.weight_in);
    if (gn == 0) return 0;
    auto h = op.apply(g);
    if (h.empty()) return 0;
    const std::size_t nz = h[0].size();
    double acc = 0;
    for (std::size_t z = 0; z < nz; ++z) {
        double mx = 0;
        for (const auto& hk : h) mx = std::max(mx, std::norm(hk[z]));
        acc += mx;
    }
    return std::sqrt(acc * op.weight_out) / gn;
}

}  // namespace

ProbeResult probe_sup(const ProbeOperator& op, const ProbeProtocol& proto, Rng& rng) {
    ProbeResult res;
    cvec best_g;
    auto consider = [&](const cvec& g) {
        double v = hard_value(op, g);
        ++res.probes_used;
        if (v > res.value) {
            res.value = v;
            best_g = g;
        }
    };

    // constant probe
    consider(cvec(op.dim, cplx(1.0, 0.0)));
    // pure frequencies
    for (int j = 0; j < proto.n_freq; ++j) {
        long f = long(double(j) * double(op.dim) / double(proto.n_freq));
        cvec g(op.dim);
        for (std::size_t y = 0; y < op.dim; ++y) {
            double ph = 6.283185307179586 * double(f) * double(y) / double(op.dim);
            g[y] = cplx(std::cos(ph), std::sin(ph));
        }
        consider(g);
    }
    // seeded complex Gaussians
    for (int j = 0; j < proto.n_gauss; ++j) {
        cvec g(op.dim);
        for (auto& z : g) z = rng.cnormal();
        consider(g);
    }

    if (!op.adjoint || best_g.empty()) return res;
    res.ascent_ran = true;

    // normalized ascent on the p-max surrogate
    cvec g = best_g;
    const double p = proto.pmax;
    for (int it = 0; it < proto.ascent_steps; ++it) {
        double gn = probe_norm(g, op.weight_in);
        if (gn == 0) break;
        for (auto& z : g) z /= gn;
        auto h = op.apply(g);
        if (h.empty()) break;
        const std::size_t nz = h[0].size();
        std::vector<cvec> psi(h.size(), cvec(nz, cplx{}));
        for (std::size_t z = 0; z < nz; ++z) {
            double s = 0;
            for (const auto& hk : h) s += std::pow(std::abs(hk[z]), p);
            if (s <= 0) continue;
            double outer = std::pow(s, 2.0 / p - 1.0);
            for (std::size_t k = 0; k < h.size(); ++k) {
                double a = std::abs(h[k][z]);
                if (a > 0) psi[k][z] = outer * std::pow(a, p - 2.0) * h[k][z];
            }
        }
        cvec grad = op.adjoint(psi);
        double gnorm = probe_norm(grad, op.weight_in);
        if (gnorm == 0) break;
        for (std::size_t y = 0; y < op.dim; ++y) g[y] += proto.step * grad[y] / gnorm;
        consider(g);
    }
    return res;
}

}  // namespace rtlab
