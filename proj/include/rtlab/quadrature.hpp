#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>

namespace rtlab {

/// Composite 10-point Gauss-Legendre on [a,b].
/// `oscillation` is an upper bound for |d/dx of the phase| / (2*pi), i.e. the
/// highest frequency present; panels are sized to keep ~half an oscillation
/// period per panel, which puts the GL error below 1e-14 per panel.
template <typename F>
auto integrate_gl(F&& f, double a, double b, double oscillation = 0.0,
                  std::size_t min_panels = 4) -> decltype(f(0.0)) {
    // 10-point Gauss-Legendre nodes/weights on [-1,1]
    static const double xg[5] = {0.1488743389816312, 0.4333953941292472,
                                 0.6794095682990244, 0.8650633666889845,
                                 0.9739065285171717};
    static const double wg[5] = {0.2955242247147529, 0.2692667193099963,
                                 0.2190863625159820, 0.1494513491505806,
                                 0.0666713443086881};
    using R = decltype(f(0.0));
    if (b <= a) return R{};
    std::size_t panels = std::size_t(2.0 * oscillation * (b - a)) + min_panels;
    const double h = (b - a) / double(panels);
    R total{};
    for (std::size_t p = 0; p < panels; ++p) {
        const double c = a + (double(p) + 0.5) * h;
        const double s = 0.5 * h;
        R acc{};
        for (int k = 0; k < 5; ++k) {
            acc += wg[k] * (f(c + s * xg[k]) + f(c - s * xg[k]));
        }
        total += s * acc;
    }
    return total;
}

}  // namespace rtlab
