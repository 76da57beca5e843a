#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rtlab/kernels.hpp"
#include "rtlab/quadrature.hpp"

using namespace rtlab;

namespace {

std::vector<double> log_samples(double lo, double hi, int per_decade) {
    std::vector<double> out;
    for (double a = lo; a <= hi * 1.0000001; a *= std::pow(10.0, 1.0 / per_decade)) {
        out.push_back(a);
        out.push_back(-a);
    }
    return out;
}

}  // namespace

TEST_CASE("inverse_y kernel: space side is exactly 1/y outside the bump") {
    auto k = make_kernel("inverse_y");
    CHECK(k.space(1.0) == 1.0);
    CHECK(k.space(2.5) == 1.0 / 2.5);
    CHECK(k.space(-3.0) == -1.0 / 3.0);
    CHECK(k.space(0.0) == 0.0);
    // odd and smooth near zero: K(y) ~ y
    CHECK(k.space(0.01) == doctest::Approx(0.01).epsilon(0.01));
    CHECK(k.space(-0.2) == doctest::Approx(-k.space(0.2)));
}

TEST_CASE("inverse_y kernel: fourier side against direct quadrature") {
    auto k = make_kernel("inverse_y");
    // K-hat(0+) = -i pi (sign-kernel limit)
    auto v = k.fourier(1e-8);
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(v.imag() == doctest::Approx(-M_PI).epsilon(1e-6));
    // odd imaginary
    auto a = k.fourier(0.7), b = k.fourier(-0.7);
    CHECK(a.imag() == doctest::Approx(-b.imag()));
    // independent route: truncated quadrature over [0, Y] with the analytic
    // 1/y tail bound; compare at moderate xi
    double xi = 0.5;
    double direct = -2.0 * integrate_gl([&](double y) { return k.space(y) * std::sin(2 * M_PI * xi * y); },
                                        0.0, 4000.0, xi);
    // remaining tail of int sin(2 pi xi y)/y dy beyond Y = 4000 is < 1/(2 pi xi Y)
    CHECK(std::abs(k.fourier(xi).imag() - direct) < 1e-3);
}

TEST_CASE("catalog kernels pass admissibility; flat symbol fails") {
    auto xi = log_samples(1e-3, 1e3, 4);
    for (const char* name : {"inverse_y", "poisson"}) {
        auto rep = check_admissible(make_kernel(name), xi, 3);
        CHECK(rep.C_size < 10.0);
        for (double c : rep.C_deriv) CHECK(c < 2000.0);  // finite, order (2 pi)^n
    }

    // Schwartz bump supported in [-3/8, 3/8]: size and derivative conditions
    // fine, but the vanishing condition |K-hat| <= C min(|xi|, 1/|xi|) needs
    // K-hat(0) = 0 and fails at small xi
    auto bump = make_kernel("bump");
    auto repb = check_admissible(bump, xi, 1);
    CHECK(repb.C_size < 10.0);
    CHECK(repb.C_deriv[0] < 2000.0);
    CHECK(repb.C_vanish > 100.0);

    Kernel flat;
    flat.name = "flat";
    flat.fourier = [](double) { return std::complex<double>(1.0, 0.0); };
    flat.space = [](double) { return 0.0; };
    auto small = check_admissible(flat, log_samples(1e-2, 1e0, 3), 1);
    auto large = check_admissible(flat, log_samples(1e-2, 1e3, 3), 1);
    CHECK(large.C_size > 100.0 * 0.9);
    CHECK(large.C_size > 50.0 * small.C_size / 10.0);  // grows with the range

    CHECK_THROWS_AS(check_admissible(flat, {0.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel("nope"), std::invalid_argument);
}

TEST_CASE("zero symbol passes with C = 0") {
    Kernel z;
    z.fourier = [](double) { return std::complex<double>(0, 0); };
    z.space = [](double) { return 0.0; };
    auto rep = check_admissible(z, log_samples(1e-2, 1e2, 3), 2);
    CHECK(rep.C_size == 0.0);
    CHECK(rep.C_deriv[0] == 0.0);
    CHECK(rep.C_deriv[1] == 0.0);
}

TEST_CASE("eta cap: levels, ramp, support") {
    auto k = make_kernel("poisson");  // even, continuous at 0
    auto eta = build_eta(k);
    CHECK(eta(0.05).real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(eta(-0.05).real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(eta(0.375) == std::complex<double>(0, 0));
    CHECK(eta(0.5) == std::complex<double>(0, 0));
    CHECK(std::abs(eta(0.2)) < 1.0);
    CHECK(std::abs(eta(0.2)) > 0.0);

    auto ki = make_kernel("inverse_y");  // odd sign-type limits
    auto ei = build_eta(ki);
    CHECK(ei(0.1).imag() == doctest::Approx(-M_PI).epsilon(1e-5));
    CHECK(ei(-0.1).imag() == doctest::Approx(M_PI).epsilon(1e-5));

    // |K-hat - eta-hat| <= C |xi| near zero
    double worst = 0;
    for (double xi = 1e-3; xi < 0.12; xi *= 1.5) {
        worst = std::max(worst, std::abs(ki.fourier(xi) - ei(xi)) / xi);
        worst = std::max(worst, std::abs(ki.fourier(-xi) - ei(-xi)) / xi);
    }
    CHECK(worst < 50.0);
}

TEST_CASE("Littlewood-Paley pieces: support, telescoping, separation") {
    auto psi = [](double xi) { return std::complex<double>(plateau_psi(xi), 0.0); };

    // support of psi_i inside [2^-i/16, 3 2^-i/8]
    for (int i : {-2, 0, 3}) {
        double lo = std::ldexp(1.0 / 16, -i), hi = std::ldexp(0.375, -i);
        CHECK(std::abs(lp_piece(psi, i, lo * 0.9)) == 0.0);
        CHECK(std::abs(lp_piece(psi, i, hi * 1.01)) == 0.0);
        CHECK(std::abs(lp_piece(psi, i, 0.5 * (lo + hi))) > 0.0);
    }

    // telescoping sum_{i>=k} psi_i = psi(2^k xi)
    int k = 1;
    for (double xi = 0.01; xi < 4.0; xi *= 1.37) {
        std::complex<double> acc{};
        for (int i = k; i <= k + 24; ++i) acc += lp_piece(psi, i, xi);
        CHECK(std::abs(acc - psi(std::ldexp(xi, k))) < 1e-12);
    }

    // support separation: pieces 3 apart never overlap
    for (double xi = 1e-3; xi < 8.0; xi *= 1.21) {
        double p0 = std::abs(lp_piece(psi, 0, xi));
        double p3 = std::abs(lp_piece(psi, 3, xi));
        CHECK(p0 * p3 == 0.0);
    }

    // zero function gives zero pieces
    auto zero = [](double) { return std::complex<double>(0, 0); };
    CHECK(std::abs(lp_piece(zero, 2, 0.05)) == 0.0);
}

TEST_CASE("discrete kernels: frozen formulas") {
    auto kern = make_kernel("inverse_y");
    int k = 3;
    auto dk = discrete_kernels(kern, k);
    const long W = 1l << k;

    // O_k(i) = 2^-k K(i 2^-k) - 1/i on the interior window
    for (long i = 1; i < W; ++i) {
        double want = std::ldexp(kern.space(double(i) / double(W)), -k) - 1.0 / double(i);
        CHECK(dk.o(i) == doctest::Approx(want).epsilon(1e-15));
    }
    // H_k(i) = 1/i beyond the window
    for (long i = W; i < 4 * W; ++i) CHECK(dk.h(i) == 1.0 / double(i));
    // A vanishes beyond [-2^k, 2^k], boundary value kept
    CHECK(dk.a(W) == dk.h(W));
    CHECK(dk.a(W + 1) == 0.0);
    CHECK(dk.o(W) == 0.0);  // A(2^k) = 1/2^k = S(2^k)

    CHECK_THROWS_AS(discrete_kernels(kern, 0), std::invalid_argument);
}

TEST_CASE("identity H_k - H_k' = O_k - O_k' exactly at integers") {
    auto kern = make_kernel("inverse_y");
    auto d3 = discrete_kernels(kern, 3);
    auto d5 = discrete_kernels(kern, 5);
    // exact rational arithmetic over the stored atoms, zero tolerance
    for (long i = -40; i <= 40; ++i) CHECK(o_identity_holds(d3, d5, i));
    // and across the whole truncation window
    auto d2 = discrete_kernels(kern, 2);
    for (long i = -d2.radius; i <= d2.radius; ++i) CHECK(o_identity_holds(d2, d3, i));
}

TEST_CASE("approximation error constants are k-uniform") {
    auto kern = make_kernel("inverse_y");
    std::vector<double> inner, outer;
    for (int k = 1; k <= 10; ++k) {
        auto rep = kernel_approx_error(kern, k);
        inner.push_back(rep.inner_sup);
        outer.push_back(rep.outer_sup);
    }
    double imin = *std::min_element(inner.begin(), inner.end());
    double imax = *std::max_element(inner.begin(), inner.end());
    CHECK(imax <= 2.0 * imin);
    double omax = *std::max_element(outer.begin(), outer.end());
    CHECK(omax < 8.0);

    // at integer points past the window both sides are exactly 1/i
    int k = 4;
    for (long i = 16; i < 64; ++i) {
        double e = std::abs(h_k_step(kern, k, double(i)) -
                            std::ldexp(kern.space(double(i) / 16.0), -4));
        CHECK(e == 0.0);
    }

    // hand value at k = 1, y = 0.5: |H_1(0.5) - (1/2) K(1/4)| = (1/2)|K(0) - K(1/4)|
    double want = 0.5 * std::abs(kern.space(0.0) - kern.space(0.25));
    double got = std::abs(h_k_step(kern, 1, 0.5) - 0.5 * kern.space(0.25));
    CHECK(got == doctest::Approx(want));
}

TEST_CASE("summation by parts weights") {
    auto kern = make_kernel("inverse_y");
    // fixed n = 5: w_k(5) -> 0 as k grows
    double prev = 1e9;
    for (int k = 3; k <= 12; k += 3) {
        auto sbp = summation_by_parts_weights(kern, k);
        double w5 = std::abs(sbp.w[4]);
        CHECK(w5 < prev + 1e-12);
        prev = w5;
    }
    auto s12 = summation_by_parts_weights(kern, 12);
    CHECK(std::abs(s12.w[4]) < 1e-3);

    // uniform bound on sum |w| across k
    double worst = 0;
    for (int k = 1; k <= 12; ++k)
        worst = std::max(worst, summation_by_parts_weights(kern, k).abs_sum);
    CHECK(worst < 10.0);

    // boundary term: |w_k(2^k)| = 2^k A_k(2^k)
    for (int k : {2, 5}) {
        auto dk = discrete_kernels(kern, k);
        auto sbp = summation_by_parts_weights(kern, k);
        long W = 1l << k;
        CHECK(std::abs(sbp.w[std::size_t(W - 1)]) ==
              doctest::Approx(double(W) * std::abs(dk.a(W))));
    }
}

TEST_CASE("csv emission") {
    auto dk = discrete_kernels(make_kernel("inverse_y"), 1);
    auto csv = discrete_kernels_csv(dk);
    CHECK(csv.find("k,n,H,A,S,O") == 0);
    CHECK(csv.find("\n1,-128,") != std::string::npos);
}

TEST_CASE("annulus partition sums to one at every nonzero frequency") {
    for (double xi = 1e-4; xi < 64.0; xi *= 1.093) {
        double s = 0;
        for (int j = -20; j <= 12; ++j) s += annulus_partition_q(std::ldexp(xi, -j));
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(annulus_partition_q(-xi) == annulus_partition_q(xi));
    }
    CHECK(annulus_partition_q(0.0) == 0.0);
    // supported inside (1/8, 3/8)
    CHECK(annulus_partition_q(0.125) == 0.0);
    CHECK(annulus_partition_q(0.375) == 0.0);
    CHECK(annulus_partition_q(0.2) > 0.0);
}
