#include "rtlab/window.hpp"

#include <cmath>
#include <stdexcept>

#include "rtlab/kernels.hpp"
#include "rtlab/quadrature.hpp"

namespace rtlab {

static const double TWO_PI = 6.283185307179586476925286766559;
static const double SUPP = 2.0 / 41.0;

const Window& Window::instance() {
    static Window w;
    return w;
}

double Window::phi_hat(double xi) const {
    if (xi <= 0.0 || xi >= SUPP) return 0.0;
    double b = smooth_bump(41.0 * xi - 1.0);
    // the shifted-squares sum has at most two live terms
    double frac = xi - std::floor(xi * 41.0) / 41.0;
    double d = smooth_bump(41.0 * frac - 1.0);
    double e = smooth_bump(41.0 * frac);  // argument of the (frac + 1/41) term
    return b / std::sqrt(d * d + e * e);
}

cplx Window::phi_direct(double t) const {
    // the phase 2 pi xi t oscillates |t| times per unit xi
    // the bump's edge derivatives blow up (Gevrey class); extra panels keep
    // the Gauss-Legendre error below 1e-12
    auto re = integrate_gl([&](double xi) { return phi_hat(xi) * std::cos(TWO_PI * xi * t); }, 0.0,
                           SUPP, std::abs(t) + 1, 48);
    auto im = integrate_gl([&](double xi) { return phi_hat(xi) * std::sin(TWO_PI * xi * t); }, 0.0,
                           SUPP, std::abs(t) + 1, 48);
    return {re, im};
}

std::shared_ptr<const Window::Lattice> Window::lattice(double spacing, double half_range) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(spacing, half_range);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    // inverse transform on a fine frequency grid; n large enough that the
    // spatial span covers half_range, the frequency step resolves the bump
    // edges, and the wrap-around alias sits below 1e-12
    std::size_t n = 1u << 19;
    while (double(n / 2) * spacing < 2 * half_range) n <<= 1;
    double dxi = 1.0 / (double(n) * spacing);
    while (SUPP / dxi < 400.0) {
        n <<= 1;
        dxi = 1.0 / (double(n) * spacing);
    }
    cvec hat(n, cplx{});
    for (std::size_t j = 0; j < n; ++j) {
        double xi = double(j) * dxi;
        if (xi < SUPP) hat[j] = phi_hat(xi);
    }
    cvec vals = fft_inverse(std::move(hat));  // vals[m] = (1/n) sum hat e^{2pi i jm/n}
    auto lat = std::make_shared<Lattice>();
    lat->spacing = spacing;
    lat->half_n = long(half_range / spacing);
    lat->vals.resize(std::size_t(2 * lat->half_n + 1));
    const double scale = double(n) * dxi;  // Riemann sum weight dxi * n * (1/n) * n
    for (long j = -lat->half_n; j <= lat->half_n; ++j) {
        std::size_t m = std::size_t((j + long(n)) % long(n));
        lat->vals[std::size_t(j + lat->half_n)] = scale * vals[m];
    }
    cache_.emplace(key, lat);
    return lat;
}

SampledSignal wave_packet(long i, long m, long l, const SampledSignal& proto) {
    return wave_packet_mod(i, m, std::ldexp(double(l) / 41.0, int(-i)), proto);
}

SampledSignal wave_packet_mod(long i, long m, double a, const SampledSignal& proto) {
    const auto& win = Window::instance();
    const double sc = std::ldexp(1.0, int(-i));  // 2^-i
    const double lat_spacing = sc * proto.spacing;
    // lattice index of 2^-i x_j - m = lat_spacing * (j + origin/dx) - m
    double o_steps = proto.origin / proto.spacing;
    double ro = std::round(o_steps);
    if (std::abs(o_steps - ro) > 1e-9)
        throw std::invalid_argument("wave_packet: grid origin must be a multiple of spacing");
    double m_steps = double(m) / lat_spacing;
    double rm = std::round(m_steps);
    if (std::abs(m_steps - rm) > 1e-9)
        throw std::invalid_argument("wave_packet: scale too coarse for this grid");

    double half_range = sc * (std::abs(proto.origin) + proto.span()) + std::abs(double(m)) + 2;
    auto lat = win.lattice(lat_spacing, half_range);

    auto out = SampledSignal::zeros(proto.origin, proto.spacing, proto.size());
    const double amp = std::pow(2.0, -0.5 * double(i));
    for (std::size_t j = 0; j < out.size(); ++j) {
        long idx = long(ro) + long(j) - long(rm);
        double x = out.x(j);
        double ph = TWO_PI * a * x;
        out.samples[j] = amp * lat->at(idx) * cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

namespace {

struct PacketGeometry {
    long o_steps = 0;   // grid origin in spacing units
    long stride = 0;    // packet center step 2^i in spacing units
    double amp = 1.0;   // 2^(-i/2)
    std::shared_ptr<const Window::Lattice> lat;
};

PacketGeometry packet_geometry(long i, const SampledSignal& proto, long m_abs_max) {
    PacketGeometry g;
    double o_steps = proto.origin / proto.spacing;
    double ro = std::round(o_steps);
    if (std::abs(o_steps - ro) > 1e-9)
        throw std::invalid_argument("analyze: grid origin must be a multiple of spacing");
    g.o_steps = long(ro);
    double st = std::ldexp(1.0, int(i)) / proto.spacing;
    double rst = std::round(st);
    if (rst < 1 || std::abs(st - rst) > 1e-9)
        throw std::invalid_argument("analyze: scale too coarse for this grid");
    g.stride = long(rst);
    g.amp = std::pow(2.0, -0.5 * double(i));
    double sc = std::ldexp(1.0, int(-i));
    double half_range =
        sc * (std::abs(proto.origin) + proto.span()) + double(m_abs_max) + 2;
    g.lat = Window::instance().lattice(sc * proto.spacing, half_range);
    return g;
}

}  // namespace

ScaleCoeffs analyze_scale(const SampledSignal& f, long i, long m_lo, long m_hi, long l_lo,
                          long l_hi) {
    ScaleCoeffs out;
    out.i = i;
    out.m_lo = m_lo;
    out.m_hi = m_hi;
    out.l_lo = l_lo;
    out.l_hi = l_hi;
    out.c.resize(std::size_t((m_hi - m_lo + 1) * (l_hi - l_lo + 1)));

    auto g = packet_geometry(i, f, std::max(std::abs(m_lo), std::abs(m_hi)));
    const long n = long(f.size());
    // c(m) = amp dx sum_j u_l[j] conj(lat[j + o - stride m]) : one FFT
    // correlation per l evaluated at all m at once
    long lagmax = std::abs(g.o_steps) + n + g.stride * (std::max(std::abs(m_lo), std::abs(m_hi)) + 1);
    std::size_t P = 1;
    while (long(P) < n + lagmax + g.lat->half_n + 8) P <<= 1;

    cvec latbuf(P, cplx{});
    for (long k = -g.lat->half_n; k <= g.lat->half_n; ++k) {
        long idx = ((k % long(P)) + long(P)) % long(P);
        latbuf[std::size_t(idx)] = g.lat->at(k);
    }
    cvec LB = fft_forward(std::move(latbuf));

    const double mod_base = std::ldexp(1.0 / 41.0, int(-i));
    for (long l = l_lo; l <= l_hi; ++l) {
        cvec u(P, cplx{});
        const double a = mod_base * double(l);
        for (long j = 0; j < n; ++j) {
            double ph = -TWO_PI * a * f.x(std::size_t(j));
            u[std::size_t(j)] = f.samples[std::size_t(j)] * cplx(std::cos(ph), std::sin(ph));
        }
        cvec U = fft_forward(std::move(u));
        // corr[t] = sum_j u[j] latconj[j - t]  = IFFT( conj(FFT(latconj)) .* FFT(u) )
        for (std::size_t q = 0; q < P; ++q) U[q] *= std::conj(LB[q]);
        cvec corr = fft_inverse(std::move(U));
        for (long m = m_lo; m <= m_hi; ++m) {
            long t = g.stride * m - g.o_steps;
            long idx = ((t % long(P)) + long(P)) % long(P);
            out.c[std::size_t((m - m_lo) * (l_hi - l_lo + 1) + (l - l_lo))] =
                g.amp * f.spacing * corr[std::size_t(idx)];
        }
    }
    return out;
}

SampledSignal reconstruct_scale(const ScaleCoeffs& coeffs, const SampledSignal& proto,
                                double threshold_rel, double f_l2) {
    auto out = SampledSignal::zeros(proto.origin, proto.spacing, proto.size());
    auto g = packet_geometry(coeffs.i, proto,
                             std::max(std::abs(coeffs.m_lo), std::abs(coeffs.m_hi)));
    const long n = long(proto.size());
    long lagmax = std::abs(g.o_steps) + n +
                  g.stride * (std::max(std::abs(coeffs.m_lo), std::abs(coeffs.m_hi)) + 1);
    std::size_t P = 1;
    while (long(P) < n + lagmax + g.lat->half_n + 8) P <<= 1;

    cvec latbuf(P, cplx{});
    for (long k = -g.lat->half_n; k <= g.lat->half_n; ++k) {
        long idx = ((k % long(P)) + long(P)) % long(P);
        latbuf[std::size_t(idx)] = g.lat->at(k);
    }
    cvec LB = fft_forward(std::move(latbuf));

    const double mod_base = std::ldexp(1.0 / 41.0, int(-coeffs.i));
    for (long l = coeffs.l_lo; l <= coeffs.l_hi; ++l) {
        cvec spikes(P, cplx{});
        bool any = false;
        for (long m = coeffs.m_lo; m <= coeffs.m_hi; ++m) {
            cplx c = coeffs.at(m, l);
            if (std::abs(c) <= threshold_rel * f_l2) continue;
            long t = g.stride * m;
            long idx = ((t % long(P)) + long(P)) % long(P);
            spikes[std::size_t(idx)] += c;
            any = true;
        }
        if (!any) continue;
        cvec S = fft_forward(std::move(spikes));
        for (std::size_t q = 0; q < P; ++q) S[q] *= LB[q];
        cvec conv = fft_inverse(std::move(S));  // conv[t] = sum_m c(m) lat[t - stride m]
        const double a = mod_base * double(l);
        for (long j = 0; j < n; ++j) {
            long t = j + g.o_steps;
            long idx = ((t % long(P)) + long(P)) % long(P);
            double ph = TWO_PI * a * out.x(std::size_t(j));
            out.samples[std::size_t(j)] +=
                g.amp * conv[std::size_t(idx)] * cplx(std::cos(ph), std::sin(ph));
        }
    }
    return out;
}

double coeff_energy(const ScaleCoeffs& coeffs) {
    double s = 0;
    for (auto z : coeffs.c) s += std::norm(z);
    return s;
}

double PacketProfile::psi0(double v) { return plateau_psi(v) - plateau_psi(2.0 * v); }

PacketProfile::PacketProfile() {
    th_step_ = std::ldexp(1.0, -10);
    x_step_ = 1.0 / 16.0;
    x_max_ = 256.0;
    nth_ = std::size_t((theta_hi - theta_lo) / th_step_) + 3;
    nx_ = std::size_t(2 * x_max_ / x_step_) + 1;
    table_.assign(nth_ * nx_, cplx{});

    // per theta node: inverse transform of u -> psi0(theta - u) phi-hat(u)
    const std::size_t n = 1u << 17;
    const double du = std::ldexp(1.0, -13);  // X span 2^13, X step 1/(n du) = 1/16
    const auto& win = Window::instance();
    cvec buf(n);
    for (std::size_t ti = 0; ti < nth_; ++ti) {
        double theta = theta_lo + double(ti) * th_step_;
        for (std::size_t j = 0; j < n; ++j) {
            double u = double(j) * du;
            buf[j] = (u < SUPP) ? psi0(theta - u) * win.phi_hat(u) : 0.0;
        }
        cvec vals = fft_inverse(buf);
        const double scale = double(n) * du;
        for (std::size_t xi = 0; xi < nx_; ++xi) {
            double X = -x_max_ + double(xi) * x_step_;
            long steps = long(std::llround(X / x_step_));
            // X lattice from the FFT has spacing 1/(n du) = x_step_
            std::size_t m = std::size_t((steps + long(n)) % long(n));
            table_[ti * nx_ + xi] = scale * vals[m];
        }
    }
}

const PacketProfile& PacketProfile::instance() {
    static PacketProfile p;
    return p;
}

namespace {

inline cplx cubic(const cplx* p, double t) {
    // Catmull-Rom through p[0..3] at parameter t in [0,1] between p[1], p[2]
    cplx a = 2.0 * p[1];
    cplx b = p[2] - p[0];
    cplx c = 2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3];
    cplx d = -p[0] + 3.0 * p[1] - 3.0 * p[2] + p[3];
    return 0.5 * (a + b * t + c * t * t + d * t * t * t);
}

}  // namespace

cplx PacketProfile::eval(double X, double Theta) const {
    if (Theta <= theta_lo || Theta >= theta_hi) return {};
    if (std::abs(X) >= x_max_ - 2 * x_step_) return {};
    double tf = (Theta - theta_lo) / th_step_;
    double xf = (X + x_max_) / x_step_;
    long t1 = long(tf), x1 = long(xf);
    t1 = std::max(1l, std::min(long(nth_) - 3, t1));
    x1 = std::max(1l, std::min(long(nx_) - 3, x1));
    double tt = tf - double(t1), xt = xf - double(x1);
    cplx rows[4];
    for (int r = -1; r <= 2; ++r) {
        const cplx* base = &table_[std::size_t(t1 + r) * nx_ + std::size_t(x1 - 1)];
        rows[r + 1] = cubic(base, xt);
    }
    return cubic(rows, tt);
}

SampledSignal PacketProfile::slice(long i, long m, double a, double theta,
                                   const SampledSignal& proto) {
    const double sc = std::ldexp(1.0, int(-i));
    const double Theta = (theta - a) / sc;
    auto out = SampledSignal::zeros(proto.origin, proto.spacing, proto.size());
    if (Theta <= theta_lo || Theta >= theta_hi) return out;

    // dedicated inverse transform of psi0(Theta - u) phi-hat(u) at this Theta;
    // the X lattice step is 1/(n du), chosen to divide the grid's X step
    std::size_t n = 1u << 17;
    double du = std::ldexp(1.0, -13);
    const double xstep_grid = sc * proto.spacing;
    while (1.0 / (double(n) * du) > xstep_grid + 1e-15) du /= 2;
    const auto& win = Window::instance();
    cvec buf(n, cplx{});
    for (std::size_t j = 0; j < n; ++j) {
        double u = double(j) * du;
        if (u < SUPP) buf[j] = psi0(Theta - u) * win.phi_hat(u);
    }
    cvec vals = fft_inverse(std::move(buf));
    const double scale = double(n) * du;
    const double xstep = 1.0 / (double(n) * du);
    const double amp = std::pow(2.0, -0.5 * double(i));
    for (std::size_t j = 0; j < out.size(); ++j) {
        double X = sc * out.x(j) - double(m);
        double fi = X / xstep;
        long k = long(std::llround(fi));
        cplx v;
        if (std::abs(fi - double(k)) > 1e-6) {
            v = instance().eval(X, Theta);  // off-lattice fallback
        } else {
            std::size_t idx = std::size_t((k % long(n) + long(n)) % long(n));
            v = scale * vals[idx];
        }
        double ph = TWO_PI * a * out.x(j);
        out.samples[j] = amp * v * cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

cplx PacketProfile::packet(long i, long m, double a, double x, double theta) const {
    const double sc = std::ldexp(1.0, int(-i));
    double X = sc * x - double(m);
    double Theta = (theta - a) / sc;
    cplx v = eval(X, Theta);
    if (v == cplx{}) return v;
    double ph = TWO_PI * a * x;
    return std::pow(2.0, -0.5 * double(i)) * v * cplx(std::cos(ph), std::sin(ph));
}

}  // namespace rtlab
