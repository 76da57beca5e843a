#include "rtlab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rtlab/window.hpp"

namespace rtlab {

static const double TWO_PI = 6.283185307179586476925286766559;

bool FrequencyPointSet::check_separated() const {
    std::set<BigInt> cells;
    for (const auto& p : points)
        if (!cells.insert(rat_floor(p)).second) return false;
    return true;
}

std::vector<GridInterval> BandFamily::bands(int k) const {
    std::vector<GridInterval> out;
    std::set<BigInt> seen;
    for (const auto& p : lambdas.points) {
        BigInt cell = rat_floor(p * pow2(k));
        if (!seen.insert(cell).second) continue;
        out.push_back(GridInterval{-k, long(cell), 0, 1});
    }
    std::sort(out.begin(), out.end(),
              [](const GridInterval& a, const GridInterval& b) { return a.l < b.l; });
    return out;
}

namespace {

// half-open [lo, hi) band mask applied on the spectrum, with the band
// multiplier sampled at bin frequencies
void mask_band(const Spectrum& F, double lo, double hi,
               const std::function<cplx(double)>& symbol, cvec& acc, std::size_t& bins) {
    for (std::size_t j = 0; j < F.size(); ++j) {
        double xi = F.xi(j);
        if (xi >= lo && xi < hi) {
            acc[j] += (symbol ? symbol(xi) : cplx(1.0, 0.0)) * F.samples[j];
            ++bins;
        }
    }
}

}  // namespace

SampledSignal apply_band_multiplier(const BandFamily& family, int k, const SampledSignal& f) {
    auto F = transform(f);
    cvec acc(F.size(), cplx{});
    for (const auto& band : family.bands(k)) {
        double lo = to_double(band.left()), hi = to_double(band.right());
        std::size_t bins = 0;
        mask_band(F, lo, hi, family.symbol, acc, bins);
        if (bins < 8) {
            std::ostringstream os;
            os << "apply_band_multiplier: band [" << rat_str(band.left()) << ", "
               << rat_str(band.right()) << ") at k=" << k << " resolved by " << bins
               << " bins (need >= 8)";
            throw std::invalid_argument(os.str());
        }
    }
    Spectrum G = F;
    G.samples = std::move(acc);
    return inverse(G);
}

SampledSignal maximal_delta(const BandFamily& family, const SampledSignal& f, int k_lo,
                            int k_hi) {
    auto out = SampledSignal::zeros(f.origin, f.spacing, f.size());
    for (int k = k_lo; k <= k_hi; ++k) {
        auto d = apply_band_multiplier(family, k, f);
        for (std::size_t j = 0; j < out.size(); ++j)
            out.samples[j] = std::max(out.samples[j].real(), std::abs(d.samples[j]));
    }
    return out;
}

double oscillation_delta(const BandFamily& family, const SampledSignal& f,
                         const std::vector<int>& u) {
    if (u.size() < 2) throw std::invalid_argument("oscillation_delta: need J >= 2");
    double total = 0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) {
        auto anchor = apply_band_multiplier(family, u[j], f);
        std::vector<double> blockmax(f.size(), 0.0);
        for (int k = u[j]; k < u[j + 1]; ++k) {
            auto d = apply_band_multiplier(family, k, f);
            for (std::size_t z = 0; z < f.size(); ++z)
                blockmax[z] = std::max(blockmax[z], std::abs(d.samples[z] - anchor.samples[z]));
        }
        double l2 = 0;
        for (std::size_t z = 0; z < f.size(); ++z) l2 += blockmax[z] * blockmax[z];
        total += l2 * f.spacing;
    }
    return std::sqrt(total);
}

double nested_band_variation(const std::vector<GridInterval>& chain, const SampledSignal& f,
                             double r, const PartitionPoints& U) {
    if (r <= 2) throw std::invalid_argument("nested_band_variation: r > 2 required");
    for (std::size_t k = 1; k < chain.size(); ++k) {
        if (!(chain[k].left() >= chain[k - 1].left() && chain[k].right() <= chain[k - 1].right()))
            throw std::invalid_argument("nested_band_variation: chain is not nested");
    }
    auto F = transform(f);
    std::vector<SampledSignal> proj;
    proj.reserve(chain.size());
    for (const auto& w : chain) {
        double lo = to_double(w.left()), hi = to_double(w.right());
        Spectrum G = F;
        for (std::size_t j = 0; j < G.size(); ++j) {
            double xi = G.xi(j);
            if (!(xi >= lo && xi < hi)) G.samples[j] = cplx{};
        }
        proj.push_back(inverse(G));
    }
    double acc = 0;
    VecSeq seq;
    seq.index_start = 1;
    seq.values.assign(chain.size(), {cplx{}});
    for (std::size_t z = 0; z < f.size(); ++z) {
        for (std::size_t k = 0; k < chain.size(); ++k) seq.values[k][0] = proj[k].samples[z];
        double v = osc_var_norm(seq, U, r);
        acc += v * v;
    }
    return std::sqrt(acc * f.spacing);
}

MpEstimate mp_norm_estimate(const std::function<cplx(double)>& m, double p,
                            const SampledSignal& proto, const ProbeProtocol& proto_cfg,
                            Rng& rng) {
    MpEstimate out;
    auto F0 = transform(proto);
    if (p == 2.0) {
        double sup = 0;
        for (std::size_t j = 0; j < F0.size(); ++j) sup = std::max(sup, std::abs(m(F0.xi(j))));
        out.exact_value = sup;
    }
    // probes live in the signal domain, normalized in L^p
    auto value_of = [&](const SampledSignal& h) {
        double hp = lp_norm(h, p);
        if (hp == 0) return 0.0;
        auto H = transform(h);
        for (std::size_t j = 0; j < H.size(); ++j) H.samples[j] *= m(H.xi(j));
        return lp_norm(inverse(H), p) / hp;
    };
    auto h = SampledSignal::zeros(proto.origin, proto.spacing, proto.size());
    // constant probe
    for (auto& z : h.samples) z = 1.0;
    out.probe_value = value_of(h);
    // localized bump probes and Gaussians
    for (int t = 0; t < proto_cfg.n_freq; ++t) {
        double xi0 = to_double(F0.xi(0)) +
                     (double(t) + 0.5) / double(proto_cfg.n_freq) * F0.spacing * double(F0.size());
        for (std::size_t j = 0; j < h.size(); ++j) {
            double x = h.x(j);
            double ph = TWO_PI * xi0 * x;
            h.samples[j] = std::exp(-x * x / 32.0) * cplx(std::cos(ph), std::sin(ph));
        }
        out.probe_value = std::max(out.probe_value, value_of(h));
    }
    for (int t = 0; t < proto_cfg.n_gauss; ++t) {
        for (auto& z : h.samples) z = rng.cnormal();
        out.probe_value = std::max(out.probe_value, value_of(h));
    }
    return out;
}

double m2star_estimate(const BandFamily& family, const SampledSignal& proto, int k_lo, int k_hi,
                       const ProbeProtocol& proto_cfg, Rng& rng) {
    // probes are spectra on the grid; Delta_k acts by masked inverse FFT
    auto F0 = transform(proto);
    const std::size_t n = proto.size();
    // precompute per-k boolean masks with the symbol baked in
    std::vector<cvec> masks;
    for (int k = k_lo; k <= k_hi; ++k) {
        cvec mk(n, cplx{});
        for (const auto& band : family.bands(k)) {
            double lo = to_double(band.left()), hi = to_double(band.right());
            for (std::size_t j = 0; j < n; ++j) {
                double xi = F0.xi(j);
                if (xi >= lo && xi < hi)
                    mk[j] = family.symbol ? family.symbol(xi) : cplx(1.0, 0.0);
            }
        }
        masks.push_back(std::move(mk));
    }
    ProbeOperator op;
    op.dim = n;
    op.weight_in = F0.spacing;  // Plancherel: ||g||_2 = ||g-hat||_2
    // raw fft_inverse values differ from the physical transform modulus by
    // n dxi = 1/dx; weight_out = dz / dx^2 folds that in
    op.weight_out = 1.0 / proto.spacing;
    op.apply = [&](const cvec& ghat) {
        std::vector<cvec> h;
        h.reserve(masks.size());
        for (const auto& mk : masks) {
            cvec b(n);
            for (std::size_t j = 0; j < n; ++j) b[j] = mk[j] * ghat[j];
            h.push_back(fft_inverse(std::move(b)));
        }
        return h;
    };
    op.adjoint = [&](const std::vector<cvec>& r) {
        cvec grad(n, cplx{});
        for (std::size_t ki = 0; ki < masks.size(); ++ki) {
            cvec R = r[ki];
            cvec Rf = fft_forward(std::move(R));
            for (std::size_t j = 0; j < n; ++j) grad[j] += std::conj(masks[ki][j]) * Rf[j];
        }
        return grad;
    };
    return probe_sup(op, proto_cfg, rng).value;
}

SignPatternReport sign_pattern_lower_bound(long L, double q, int draws,
                                           const SampledSignal& proto, Rng& rng) {
    if (!(q > 2.0)) throw std::invalid_argument("sign_pattern_lower_bound: q > 2 required");
    if (L < 1 || L > 64) throw std::invalid_argument("sign_pattern_lower_bound: 1 <= L <= 64");
    SignPatternReport rep;
    auto F0 = transform(proto);
    const std::size_t n = proto.size();
    // unit-band pieces with f-hat = 1 on [l, l+1)
    std::vector<SampledSignal> piece;
    for (long l = 0; l < L; ++l) {
        Spectrum G = F0;
        for (std::size_t j = 0; j < n; ++j) {
            double xi = G.xi(j);
            G.samples[j] = (xi >= double(l) && xi < double(l + 1)) ? cplx(1.0, 0.0) : cplx{};
        }
        piece.push_back(inverse(G));
    }
    auto fL = SampledSignal::zeros(proto.origin, proto.spacing, n);
    for (const auto& p : piece)
        for (std::size_t j = 0; j < n; ++j) fL.samples[j] += p.samples[j];
    rep.fL_q = lp_norm(fL, q);

    auto sq = SampledSignal::zeros(proto.origin, proto.spacing, n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (const auto& p : piece) s += std::norm(p.samples[j]);
        sq.samples[j] = std::sqrt(s);
    }
    rep.square_function_q = lp_norm(sq, q);

    // the multiplier with signs eps maps the signed sum back to f_L, so each
    // draw witnesses the operator-norm lower bound ||f_L||_q / ||sum eps piece||_q;
    // Khintchine keeps the denominator near the square function ~ L^(1/2)
    auto g = SampledSignal::zeros(proto.origin, proto.spacing, n);
    for (int d = 0; d < draws; ++d) {
        std::vector<double> eps(static_cast<std::size_t>(L));
        for (auto& e : eps) e = rng.coin() ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{};
            for (long l = 0; l < L; ++l) acc += eps[std::size_t(l)] * piece[std::size_t(l)].samples[j];
            g.samples[j] = acc;
        }
        rep.best_ratio = std::max(rep.best_ratio, rep.fL_q / lp_norm(g, q));
    }
    return rep;
}

cplx ModelOperator::sum(double x, double theta, int kcut) const {
    const auto& prof = PacketProfile::instance();
    cplx acc{};
    for (std::size_t s = 0; s < tiles->size(); ++s) {
        const Tile& t = (*tiles)[s];
        if (t.i >= kcut) continue;  // |I_s| = 2^i < 2^kcut
        acc += (*coeffs)[s] * prof.packet(t.i, t.m, to_double(t.mod_freq()), x, theta);
    }
    return acc;
}

std::vector<cvec> ModelOperator::rows(double x, const std::vector<double>& theta_grid,
                                      const std::vector<int>& kcuts) const {
    const auto& prof = PacketProfile::instance();
    // accumulate per-scale contributions once, then prefix over cuts
    std::map<long, cvec> by_scale;
    for (std::size_t s = 0; s < tiles->size(); ++s) {
        const Tile& t = (*tiles)[s];
        auto& row = by_scale.try_emplace(t.i, cvec(theta_grid.size(), cplx{})).first->second;
        double a = to_double(t.mod_freq());
        for (std::size_t j = 0; j < theta_grid.size(); ++j)
            row[j] += (*coeffs)[s] * prof.packet(t.i, t.m, a, x, theta_grid[j]);
    }
    std::vector<cvec> out;
    out.reserve(kcuts.size());
    for (int kcut : kcuts) {
        cvec row(theta_grid.size(), cplx{});
        for (const auto& [i, r] : by_scale) {
            if (i >= kcut) continue;
            for (std::size_t j = 0; j < row.size(); ++j) row[j] += r[j];
        }
        out.push_back(std::move(row));
    }
    return out;
}

double model_m2star_at(const ModelOperator& op, double x, const SampledSignal& proto,
                       const std::vector<int>& kcuts, const ProbeProtocol& proto_cfg, Rng& rng) {
    auto F0 = transform(proto);
    std::vector<double> theta_grid(F0.size());
    for (std::size_t j = 0; j < F0.size(); ++j) theta_grid[j] = F0.xi(j);
    auto rows = op.rows(x, theta_grid, kcuts);

    ProbeOperator pop;
    pop.dim = F0.size();
    pop.weight_in = F0.spacing;
    pop.weight_out = 1.0 / proto.spacing;  // raw ifft modulus scale, see above
    pop.apply = [&](const cvec& ghat) {
        std::vector<cvec> h;
        h.reserve(rows.size());
        for (const auto& mk : rows) {
            cvec b(pop.dim);
            for (std::size_t j = 0; j < pop.dim; ++j) b[j] = mk[j] * ghat[j];
            h.push_back(fft_inverse(std::move(b)));
        }
        return h;
    };
    pop.adjoint = [&](const std::vector<cvec>& r) {
        cvec grad(pop.dim, cplx{});
        for (std::size_t ki = 0; ki < rows.size(); ++ki) {
            cvec R = r[ki];
            cvec Rf = fft_forward(std::move(R));
            for (std::size_t j = 0; j < pop.dim; ++j) grad[j] += std::conj(rows[ki][j]) * Rf[j];
        }
        return grad;
    };
    return probe_sup(pop, proto_cfg, rng).value;
}


}  // namespace rtlab
