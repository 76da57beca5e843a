#include "rtlab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace rtlab {

static const double TWO_PI = 6.283185307179586476925286766559;

SampledSignal SampledSignal::zeros(double origin, double spacing, std::size_t n) {
    if (!is_pow2(n) || n < 2) throw std::invalid_argument("signal: n must be a power of two >= 2");
    if (spacing <= 0) throw std::invalid_argument("signal: spacing must be positive");
    SampledSignal f;
    f.origin = origin;
    f.spacing = spacing;
    f.samples.assign(n, cplx{});
    return f;
}

SampledSignal SampledSignal::from_function(double origin, double spacing, std::size_t n,
                                           const std::function<cplx(double)>& fn) {
    auto f = zeros(origin, spacing, n);
    for (std::size_t m = 0; m < n; ++m) f.samples[m] = fn(f.x(m));
    return f;
}

Spectrum transform(const SampledSignal& f) {
    const std::size_t n = f.size();
    cvec g(n);
    for (std::size_t m = 0; m < n; ++m) g[m] = (m & 1) ? -f.samples[m] : f.samples[m];
    cvec G = fft_forward(std::move(g));
    Spectrum F;
    F.time_origin = f.origin;
    F.time_spacing = f.spacing;
    F.spacing = 1.0 / (double(n) * f.spacing);
    F.origin = -0.5 / f.spacing;
    F.samples.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double xi = F.xi(j);
        double ph = -TWO_PI * xi * f.origin;
        F.samples[j] = f.spacing * G[j] * cplx(std::cos(ph), std::sin(ph));
    }
    return F;
}

SampledSignal inverse(const Spectrum& F) {
    const std::size_t n = F.size();
    cvec h(n);
    for (std::size_t j = 0; j < n; ++j) {
        double ph = TWO_PI * F.xi(j) * F.time_origin;
        h[j] = F.samples[j] * cplx(std::cos(ph), std::sin(ph));
    }
    cvec u = fft_inverse(std::move(h));
    SampledSignal f;
    f.origin = F.time_origin;
    f.spacing = F.time_spacing;
    f.samples.resize(n);
    const double scale = double(n) * F.spacing;  // = 1 / time_spacing
    for (std::size_t m = 0; m < n; ++m) {
        cplx v = scale * u[m];
        f.samples[m] = (m & 1) ? -v : v;
    }
    return f;
}

double l2_norm(const SampledSignal& f) {
    double s = 0;
    for (auto z : f.samples) s += std::norm(z);
    return std::sqrt(s * f.spacing);
}

double l2_norm(const Spectrum& F) {
    double s = 0;
    for (auto z : F.samples) s += std::norm(z);
    return std::sqrt(s * F.spacing);
}

double lp_norm(const SampledSignal& f, double p) {
    double s = 0;
    for (auto z : f.samples) s += std::pow(std::abs(z), p);
    return std::pow(s * f.spacing, 1.0 / p);
}

double l1_norm(const SampledSignal& f) {
    double s = 0;
    for (auto z : f.samples) s += std::abs(z);
    return s * f.spacing;
}

cplx eval_spectrum(const Spectrum& F, double x) {
    cplx acc{};
    for (std::size_t j = 0; j < F.size(); ++j) {
        double ph = TWO_PI * F.xi(j) * x;
        acc += F.samples[j] * cplx(std::cos(ph), std::sin(ph));
    }
    return acc * F.spacing;
}

cplx eval_interpolated(const SampledSignal& f, double x) {
    return eval_spectrum(transform(f), x);
}

SampledSignal dil(const SampledSignal& f, double s, double p) {
    if (s <= 0) throw std::invalid_argument("dil: scale must be positive");
    if (s == 1.0) return f;
    auto F = transform(f);
    auto out = SampledSignal::zeros(f.origin, f.spacing, f.size());
    const double amp = std::pow(s, -1.0 / p);
    const double lo = f.origin, hi = f.origin + f.span();
    for (std::size_t m = 0; m < out.size(); ++m) {
        double u = out.x(m) / s;
        if (u < lo || u >= hi) {
            out.truncated = true;
            continue;
        }
        out.samples[m] = amp * eval_spectrum(F, u);
    }
    return out;
}

SampledSignal tr(const SampledSignal& f, double y) {
    auto out = SampledSignal::zeros(f.origin, f.spacing, f.size());
    double steps = y / f.spacing;
    double ri = std::round(steps);
    if (std::abs(steps - ri) < 1e-12) {
        long k = long(ri);
        for (std::size_t m = 0; m < out.size(); ++m) {
            long src = long(m) - k;
            if (src < 0 || src >= long(f.size()))
                out.truncated = true;
            else
                out.samples[m] = f.samples[std::size_t(src)];
        }
        return out;
    }
    auto F = transform(f);
    const double lo = f.origin, hi = f.origin + f.span();
    for (std::size_t m = 0; m < out.size(); ++m) {
        double u = out.x(m) - y;
        if (u < lo || u >= hi) {
            out.truncated = true;
            continue;
        }
        out.samples[m] = eval_spectrum(F, u);
    }
    return out;
}

SampledSignal mod(const SampledSignal& f, double theta) {
    SampledSignal out = f;
    for (std::size_t m = 0; m < out.size(); ++m) {
        double ph = TWO_PI * theta * out.x(m);
        out.samples[m] *= cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

double chi_weight(double center, double length, double x, int M) {
    if (length <= 0) throw std::invalid_argument("chi_weight: |I| must be positive");
    double base = 1.0 / (1.0 + std::abs(x - center) / length);
    return std::pow(base, M);
}

SampledSignal maximal_p(const SampledSignal& f, double p) {
    if (p < 1) throw std::invalid_argument("maximal_p: p >= 1 required");
    const std::size_t n = f.size();
    std::vector<double> v(n);
    std::vector<double> pref(n + 1, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        v[m] = std::pow(std::abs(f.samples[m]), p);
        pref[m + 1] = pref[m] + v[m];
    }
    auto out = SampledSignal::zeros(f.origin, f.spacing, n);
    for (std::size_t m = 0; m < n; ++m) {
        double best = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            std::size_t lo = (m >= k) ? m - k : 0;
            std::size_t hi = std::min(m + k, n - 1);
            // trapezoid over [lo, hi]: centered average with probability
            // normalization, exact on constants
            double integral = (pref[hi + 1] - pref[lo] - 0.5 * (v[lo] + v[hi])) * f.spacing;
            best = std::max(best, integral / (2.0 * double(k) * f.spacing));
        }
        out.samples[m] = std::pow(best, 1.0 / p);
    }
    return out;
}

double bmo_norm(const SampledSignal& f) {
    const std::size_t n = f.size();
    double sup = 0;
    for (std::size_t blocks = 1; blocks <= n / 2; blocks *= 2) {
        std::size_t len = n / blocks;
        for (std::size_t b = 0; b < blocks; ++b) {
            cplx mean{};
            for (std::size_t i = b * len; i < (b + 1) * len; ++i) mean += f.samples[i];
            mean /= double(len);
            double osc = 0;
            for (std::size_t i = b * len; i < (b + 1) * len; ++i)
                osc += std::abs(f.samples[i] - mean);
            sup = std::max(sup, osc / double(len));
        }
    }
    return sup;
}

AdaptedReport adapted_check(const SampledSignal& phi, double center, double length, double C,
                            const std::vector<int>& M_list, const SampledSignal* dphi) {
    const std::size_t n = phi.size();
    cvec deriv(n);
    if (dphi) {
        deriv = dphi->samples;
    } else {
        for (std::size_t m = 0; m < n; ++m) {
            std::size_t lo = (m == 0) ? 0 : m - 1;
            std::size_t hi = (m + 1 == n) ? m : m + 1;
            deriv[m] = (phi.samples[hi] - phi.samples[lo]) / (double(hi - lo) * phi.spacing);
        }
    }
    AdaptedReport rep;
    rep.M_list = M_list;
    const double s0 = 1.0 / std::sqrt(length);
    const double s1 = s0 / length;
    for (int M : M_list) {
        double worst = 0;
        for (std::size_t m = 0; m < n; ++m) {
            double w = chi_weight(center, length, phi.x(m), M);
            worst = std::max(worst, std::abs(phi.samples[m]) / (C * s0 * w));
            worst = std::max(worst, std::abs(deriv[m]) / (C * s1 * w));
        }
        rep.A.push_back(worst);
    }
    return rep;
}

SampledSignal poisson(const SampledSignal& f, double t) {
    if (t <= 0) throw std::invalid_argument("poisson: t must be positive");
    auto F = transform(f);
    for (std::size_t j = 0; j < F.size(); ++j) F.samples[j] *= std::exp(-t * std::abs(F.xi(j)));
    return inverse(F);
}

double mean_zero_defect(const SampledSignal& phi, double c) {
    cplx acc{};
    for (std::size_t m = 0; m < phi.size(); ++m) {
        double ph = -c * phi.x(m);
        acc += phi.samples[m] * cplx(std::cos(ph), std::sin(ph));
    }
    return std::abs(acc * phi.spacing);
}

std::string signal_csv(const SampledSignal& f) {
    std::ostringstream os;
    os.precision(17);
    os << "x,re,im\n";
    for (std::size_t m = 0; m < f.size(); ++m)
        os << f.x(m) << "," << f.samples[m].real() << "," << f.samples[m].imag() << "\n";
    return os.str();
}

SampledSignal signal_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<double> xs;
    cvec vals;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == 'x') continue;
        double x, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
            throw std::invalid_argument("signal_from_csv: bad row");
        xs.push_back(x);
        vals.emplace_back(re, im);
    }
    if (xs.size() < 2) throw std::invalid_argument("signal_from_csv: too few rows");
    SampledSignal f;
    f.origin = xs[0];
    f.spacing = xs[1] - xs[0];
    f.samples = std::move(vals);
    if (!is_pow2(f.size())) throw std::invalid_argument("signal_from_csv: length not a power of two");
    return f;
}

std::vector<unsigned char> signal_binary(const SampledSignal& f) {
    std::vector<unsigned char> out(16 + 8 + 16 * f.size());
    std::uint64_t n = f.size();
    std::memcpy(out.data(), &f.origin, 8);
    std::memcpy(out.data() + 8, &f.spacing, 8);
    std::memcpy(out.data() + 16, &n, 8);
    for (std::size_t m = 0; m < f.size(); ++m) {
        double re = f.samples[m].real(), im = f.samples[m].imag();
        std::memcpy(out.data() + 24 + 16 * m, &re, 8);
        std::memcpy(out.data() + 32 + 16 * m, &im, 8);
    }
    return out;
}

SampledSignal signal_from_binary(const std::vector<unsigned char>& b) {
    if (b.size() < 24) throw std::invalid_argument("signal_from_binary: truncated header");
    SampledSignal f;
    std::uint64_t n = 0;
    std::memcpy(&f.origin, b.data(), 8);
    std::memcpy(&f.spacing, b.data() + 8, 8);
    std::memcpy(&n, b.data() + 16, 8);
    if (b.size() != 24 + 16 * n) throw std::invalid_argument("signal_from_binary: size mismatch");
    f.samples.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        double re, im;
        std::memcpy(&re, b.data() + 24 + 16 * m, 8);
        std::memcpy(&im, b.data() + 32 + 16 * m, 8);
        f.samples[m] = {re, im};
    }
    return f;
}

}  // namespace rtlab
