#include "rtlab/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rtlab {

double RotationOrbit::state(long n) const {
    // n*alpha as an exact double-double product, reduced mod 1
    double p = double(n) * alpha;
    double e = std::fma(double(n), alpha, -p);
    double frac = p - std::floor(p);
    double x = x0 + frac + e;
    x -= std::floor(x);
    return x;
}

DoublingOrbit::DoublingOrbit(std::uint64_t seed, std::size_t horizon) {
    Rng rng = Rng::derive(seed, "doubling-bits");
    bits_.resize(horizon + 64);
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] = rng.coin();
}

double DoublingOrbit::state(long n) const {
    if (n < 0 || std::size_t(n) + 53 >= bits_.size())
        throw std::out_of_range("doubling orbit: n outside generated horizon");
    double x = 0, w = 0.5;
    for (int b = 0; b < 53; ++b, w *= 0.5)
        if (bits_[std::size_t(n) + std::size_t(b)]) x += w;
    return x;
}

cplx return_avg(const OrbitWeights& fw, const OrbitWeights& gw, long N) {
    if (N < 1) throw std::invalid_argument("return_avg: N >= 1");
    cplx acc{};
    for (long n = 0; n < N; ++n) acc += fw.at(n) * gw.at(n);
    return acc / double(N);
}

cplx hilbert_series(const OrbitWeights& fw, const OrbitWeights& gw, long N) {
    if (N < 1) throw std::invalid_argument("hilbert_series: N >= 1");
    cplx acc{};
    for (long n = 1; n <= N; ++n) {
        acc += fw.at(n) * gw.at(n) / double(n);
        acc -= fw.at(-n) * gw.at(-n) / double(n);
    }
    return acc;
}

cplx wiener_wintner(const OrbitWeights& fw, double theta, long N) {
    if (N < 1) throw std::invalid_argument("wiener_wintner: N >= 1");
    cplx acc{};
    for (long n = 0; n < N; ++n) {
        double ph = 6.283185307179586 * theta * double(n);
        acc += fw.at(n) * cplx(std::cos(ph), std::sin(ph));
    }
    return acc / double(N);
}

cplx cotlar_series(const OrbitWeights& fw, long N) {
    if (N < 1) throw std::invalid_argument("cotlar_series: N >= 1");
    cplx acc{};
    for (long n = 1; n <= N; ++n) {
        acc += fw.at(n) / double(n);
        acc -= fw.at(-n) / double(n);
    }
    return acc;
}

std::vector<double> lacunary_cauchy_diffs(const std::function<cplx(long)>& term, int m_lo,
                                          int m_hi) {
    std::vector<double> out;
    for (int m = m_lo; m < m_hi; ++m) {
        cplx block{};
        for (long n = (1l << m) + 1; n <= (1l << (m + 1)); ++n) block += term(n) + term(-n);
        out.push_back(std::abs(block));
    }
    return out;
}

MaxReturnResult max_return_norm(const OrbitWeights& fw, long K, long N_max,
                                const ProbeProtocol& proto, Rng& rng) {
    if (K < 1) throw std::invalid_argument("max_return_norm: K >= 1");
    ProbeOperator op;
    op.dim = std::size_t(K);
    op.weight_in = 1.0 / double(K);   // uniform probability on Z_K
    op.weight_out = 1.0 / double(K);
    // running prefix over n gives A_N for every N at once; a single stacked
    // output row per N keeps the generic protocol applicable
    op.apply = [&, K, N_max](const cvec& g) {
        std::vector<cvec> h(std::size_t(N_max), cvec(std::size_t(K), cplx{}));
        for (long y = 0; y < K; ++y) {
            cplx run{};
            for (long n = 0; n < N_max; ++n) {
                run += fw.at(n) * g[std::size_t((y + n) % K)];
                h[std::size_t(n)][std::size_t(y)] = run / double(n + 1);
            }
        }
        return h;
    };
    op.adjoint = [&, K, N_max](const std::vector<cvec>& r) {
        // sum over n >= b collapses to suffix sums per y
        cvec grad(std::size_t(K), cplx{});
        cvec suffix(static_cast<std::size_t>(N_max));
        for (long y = 0; y < K; ++y) {
            cplx run{};
            for (long n = N_max - 1; n >= 0; --n) {
                run += r[std::size_t(n)][std::size_t(y)] / double(n + 1);
                suffix[std::size_t(n)] = run;
            }
            for (long b = 0; b < N_max; ++b)
                grad[std::size_t((y + b) % K)] += std::conj(fw.at(b)) * suffix[std::size_t(b)];
        }
        return grad;
    };
    MaxReturnResult res;
    auto pr = probe_sup(op, proto, rng);
    res.value = pr.value;
    res.probes_used = pr.probes_used;
    return res;
}

double transfer_best_constant(const std::vector<double>& phi, long a, long N_max,
                              const ProbeProtocol& proto, Rng& rng) {
    // psi lives on [0, Cw); the averages see it for c in (-N_max, Cw), so the
    // output rows run over that whole range
    const long span = long(phi.size());
    const long Cw = span + N_max + 2;
    const long c_lo = -N_max + 1, c_cnt = Cw + N_max - 1;
    ProbeOperator op;
    op.dim = std::size_t(Cw);
    op.weight_in = 1.0;
    op.weight_out = 1.0;
    auto phi_at = [&](long t) -> double {
        return (t >= 0 && t < span) ? phi[std::size_t(t)] : 0.0;
    };
    op.apply = [&, a, N_max, Cw, c_lo, c_cnt](const cvec& g) {
        std::vector<cvec> h(std::size_t(N_max), cvec(std::size_t(c_cnt), cplx{}));
        for (long ci = 0; ci < c_cnt; ++ci) {
            long c = c_lo + ci;
            cplx run{};
            for (long n = 0; n < N_max; ++n) {
                long cc = c + n;
                cplx gv = (cc >= 0 && cc < Cw) ? g[std::size_t(cc)] : cplx{};
                run += phi_at(a + n) * gv;
                h[std::size_t(n)][std::size_t(ci)] = run / double(n + 1);
            }
        }
        return h;
    };
    op.adjoint = [&, a, N_max, Cw, c_lo, c_cnt](const std::vector<cvec>& r) {
        cvec grad(std::size_t(Cw), cplx{});
        cvec suffix(static_cast<std::size_t>(N_max));
        for (long ci = 0; ci < c_cnt; ++ci) {
            long c = c_lo + ci;
            cplx run{};
            for (long n = N_max - 1; n >= 0; --n) {
                run += r[std::size_t(n)][std::size_t(ci)] / double(n + 1);
                suffix[std::size_t(n)] = run;
            }
            for (long b = 0; b < N_max; ++b) {
                long cc = c + b;
                if (cc >= 0 && cc < Cw)
                    grad[std::size_t(cc)] += phi_at(a + b) * suffix[std::size_t(b)];
            }
        }
        return grad;
    };
    return probe_sup(op, proto, rng).value;
}

std::string system_json(const std::string& kind, double alpha, long K, std::uint64_t seed) {
    nlohmann::json j;
    j["kind"] = kind;
    if (kind == "rotation") j["alpha"] = alpha;
    if (kind == "cyclic_shift") j["K"] = K;
    j["seed"] = seed;
    return j.dump();
}

std::string orbit_csv(const OrbitWeights& fw) {
    std::ostringstream os;
    os.precision(17);
    os << "n,re,im\n";
    for (std::size_t k = 0; k < fw.w.size(); ++k)
        os << (fw.n_lo + long(k)) << "," << fw.w[k].real() << "," << fw.w[k].imag() << "\n";
    return os.str();
}

}  // namespace rtlab
