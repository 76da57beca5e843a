// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "rtlab/experiments.hpp"

using namespace rtlab;

namespace {

int failures = 0;

void line(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

struct Timed {
    ExperimentReport rep;
    double seconds = 0;
};

Timed timed_run(const std::string& name, nlohmann::json params, std::uint64_t seed) {
    ExperimentSpec spec;
    spec.name = name;
    spec.params = std::move(params);
    spec.seed = seed;
    spec.threads = 0;  // auto
    auto t0 = std::chrono::steady_clock::now();
    Timed t;
    t.rep = run_experiment(spec);
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

bool check_passed(const ExperimentReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return c.verdict == Verdict::pass;
    return false;
}

double check_value(const ExperimentReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return c.measured;
    return -1;
}

}  // namespace

int main() {
    const std::uint64_t seed = 20260811;

    // 1. grid axioms over the full (j, L) sweep
    {
        auto t = timed_run("verify-grid", {{"N", 41}, {"periods", 3}, {"window", 8.0}}, seed);
        bool ok = check_passed(t.rep, "nestedness_violations") &&
                  check_passed(t.rep, "cross_family_shared_intervals") && t.seconds < 30.0;
        line(1, "grid nestedness and disjointness, window [0,8), 3 scale periods", ok,
             "runtime " + format_double(t.seconds) + "s");
    }

    // 2+3. window identity; reconstruction and energy ratios
    {
        auto t = timed_run("wavepacket", {{"signals", 20}}, seed);
        line(2, "window partition identity below 1e-8, exact support",
             check_passed(t.rep, "window_partition_identity") &&
                 check_passed(t.rep, "window_support_exact"),
             "max deviation " + format_double(check_value(t.rep, "window_partition_identity")));
        line(3, "single-scale reconstruction 1e-3, energy ratio spread 1e-3",
             check_passed(t.rep, "single_scale_reconstruction") &&
                 check_passed(t.rep, "parseval_ratio_spread"),
             "max rel error " + format_double(check_value(t.rep, "single_scale_reconstruction")));
    }

    // 4. forest selection
    {
        auto t = timed_run("tree-select", {{"seeds", 20}, {"tiles", 200}}, seed);
        bool ok = check_passed(t.rep, "recomputed_size_bounds") &&
                  check_passed(t.rep, "partition_exact") &&
                  check_passed(t.rep, "counting_constant_factor4") && t.seconds < 120.0;
        line(4, "forest selection: exact size bounds, counting constant within factor 4", ok,
             "spread " + format_double(check_value(t.rep, "counting_constant_factor4")) +
                 ", runtime " + format_double(t.seconds) + "s");
    }

    // 5. norm properties
    {
        auto t = timed_run("verify-norms", {{"instances", 10000}, {"max_len", 12}}, seed);
        bool ok = !t.rep.failed() && t.seconds < 60.0;
        line(5, "variation/oscillation properties on 1e4 exhaustive instances", ok,
             "runtime " + format_double(t.seconds) + "s");
    }

    // 6. kernel identities and constants
    {
        auto t = timed_run("verify-kernels", {}, seed);
        bool ok = check_passed(t.rep, "h_minus_h_equals_o_minus_o_exact") &&
                  check_passed(t.rep, "approx_inner_constant_stable") &&
                  check_passed(t.rep, "approx_outer_constant_bounded") &&
                  check_passed(t.rep, "sbp_weight_sums_uniform");
        line(6, "discrete kernel identity exact; approximation and weight sums uniform", ok);
    }

    // 7. maximal growth in L
    {
        auto t = timed_run("bourgain-L", {{"seeds", 10}}, seed);
        bool ok = check_passed(t.rep, "maximal_growth_exponent") && t.seconds < 300.0;
        line(7, "band maximal growth exponent <= 0.5 + 2 stderr", ok,
             "exponent " + format_double(check_value(t.rep, "maximal_growth_exponent")) +
                 ", runtime " + format_double(t.seconds) + "s");
    }

    // 8. oscillation growth in J
    {
        auto t = timed_run("bourgain-J", {{"seeds", 10}}, seed);
        line(8, "oscillation J-exponent < 0.5 + 2 stderr",
             check_passed(t.rep, "oscillation_J_exponent"),
             "exponent " + format_double(check_value(t.rep, "oscillation_J_exponent")));
    }

    // 9. sign-pattern lower bound
    {
        auto t = timed_run("sign-lower-bound", {{"q", 4.0}, {"draws", 256}}, seed);
        line(9, "||f_L||_q exponent within 0.05 of 3/4; ratio exponent >= 0.15",
             check_passed(t.rep, "fL_norm_exponent") &&
                 check_passed(t.rep, "achieved_ratio_exponent"),
             "ratio exponent " + format_double(check_value(t.rep, "achieved_ratio_exponent")));
    }

    // 10. model operator resolution stability
    {
        auto t = timed_run("model-op", {{"tiles", 200}, {"resolutions", 4}}, seed);
        line(10, "probe-estimated model ratio stable within factor 2 over 3 doublings",
             check_passed(t.rep, "resolution_stability_factor2"),
             "spread " + format_double(check_value(t.rep, "resolution_stability_factor2")));
    }

    // 11. ergodic convergence
    {
        auto tb = timed_run("birkhoff", {{"N", 100000}}, seed);
        auto tc = timed_run("cotlar", {}, seed);
        auto tr = timed_run("return-times", {{"probe_gauss", 64}}, seed);
        bool ok = check_passed(tb.rep, "birkhoff_equidistribution") &&
                  check_passed(tc.rep, "lacunary_monotone_one_inversion") &&
                  check_passed(tr.rep, "hilbert_lacunary_monotone_one_inversion");
        line(11, "Birkhoff within 0.01; lacunary Cauchy differences contract", ok,
             "avg defect " + format_double(check_value(tb.rep, "birkhoff_equidistribution")));
    }

    // 12. determinism: byte-identical csv bodies for every experiment
    {
        std::vector<std::pair<std::string, nlohmann::json>> quick = {
            {"verify-grid", {{"window", 2.0}}},
            {"verify-norms", {{"instances", 300}, {"max_len", 10}}},
            {"verify-kernels", nlohmann::json::object()},
            {"birkhoff", {{"N", 20000}}},
            {"wiener-wintner", {{"N", 20000}}},
            {"cotlar", {{"m_hi", 12}}},
            {"return-times",
             {{"m_hi", 12}, {"K", 64}, {"N_max", 64}, {"probe_gauss", 16}, {"probe_ascent", 4}}},
            {"bourgain-L", {{"seeds", 2}, {"L_values", {2, 8}}}},
            {"bourgain-J",
             {{"seeds", 2}, {"J_values", {2, 8}}, {"nested_f", 2}, {"nested_chains", 2}}},
            {"tree-select", {{"seeds", 2}, {"tiles", 80}}},
            {"wavepacket", {{"signals", 2}}},
            {"model-op",
             {{"tiles", 50}, {"resolutions", 2}, {"probe_gauss", 8}, {"probe_ascent", 2}}},
            {"sign-lower-bound", {{"draws", 32}, {"L_values", {4, 16}}}},
            {"transfer-constants",
             {{"span", 16}, {"N_max", 32}, {"probe_gauss", 16}, {"probe_ascent", 4}}},
        };
        bool all_ok = true;
        std::string bad;
        for (const auto& [name, params] : quick) {
            auto a = timed_run(name, params, seed ^ 5);
            auto b = timed_run(name, params, seed ^ 5);
            if (a.rep.cells_csv() != b.rep.cells_csv()) {
                all_ok = false;
                bad += name + " ";
            }
        }
        line(12, "byte-identical csv bodies across repeated seeded runs (all experiments)",
             all_ok, bad.empty() ? "" : ("mismatch: " + bad));
    }

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures);
    return failures == 0 ? 0 : 1;
}
