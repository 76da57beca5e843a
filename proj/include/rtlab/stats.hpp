#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rtlab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double residual_rms = 0.0;
};

/// Least squares y = a + b x with the standard error of b.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("fit_line: need >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / double(n));
    f.slope_stderr = (n > 2) ? std::sqrt(ss / double(n - 2) / sxx) : 0.0;
    return f;
}

/// Fit y ~ C x^b on log-log axes; returns the exponent fit.
inline LineFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) throw std::invalid_argument("fit_power_law: need positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

inline double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / double(v.size());
}

/// Kolmogorov-Smirnov distance of samples in [0,1) against the uniform law.
inline double ks_uniform(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = double(i) / double(n), hi = double(i + 1) / double(n);
        d = std::max(d, std::max(std::abs(v[i] - lo), std::abs(v[i] - hi)));
    }
    return d;
}

}  // namespace rtlab
