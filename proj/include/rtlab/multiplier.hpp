#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/grid.hpp"
#include "rtlab/probe.hpp"
#include "rtlab/seqnorm.hpp"
#include "rtlab/signal.hpp"
#include "rtlab/tiles.hpp"

namespace rtlab {

/// Finite frequency point set with the optional one-per-unit-cell separation.
struct FrequencyPointSet {
    std::vector<Rat> points;
    bool check_separated() const;  // each [k, k+1) holds at most one point
};

/// Per scale k, the distinct dyadic cells of length 2^-k holding a point.
struct BandFamily {
    FrequencyPointSet lambdas;
    // optional per-band multiplier on the cell; identity when absent
    std::function<cplx(double)> symbol;

    std::vector<GridInterval> bands(int k) const;
};

/// Delta_k f = sum over the k-bands of the masked inverse transform.
/// Bands are half-open [a, b) on the grid; every band must span >= 8 bins.
SampledSignal apply_band_multiplier(const BandFamily& family, int k, const SampledSignal& f);

/// Pointwise sup over k in [k_lo, k_hi] of |Delta_k f|.
SampledSignal maximal_delta(const BandFamily& family, const SampledSignal& f, int k_lo,
                            int k_hi);

/// sqrt( sum_j || sup_{u_j <= k < u_{j+1}} |Delta_k f - Delta_{u_j} f| ||_2^2 )
double oscillation_delta(const BandFamily& family, const SampledSignal& f,
                         const std::vector<int>& u);

/// || osc-var norm over k of the band projections ||_{L^2_x} for a nested
/// chain |omega_k| = 2^-k.
double nested_band_variation(const std::vector<GridInterval>& chain, const SampledSignal& f,
                             double r, const PartitionPoints& U);

/// Probe lower bound of the M_p multiplier norm; p = 2 also reports the exact
/// sup of |m| on the grid.
struct MpEstimate {
    double probe_value = 0;
    std::optional<double> exact_value;  // p = 2 only
};
MpEstimate mp_norm_estimate(const std::function<cplx(double)>& m, double p,
                            const SampledSignal& proto, const ProbeProtocol& proto_cfg,
                            Rng& rng);

/// Probe lower bound of the maximal multiplier norm of the family
/// {Delta_k}_{k in [k_lo, k_hi]}.
double m2star_estimate(const BandFamily& family, const SampledSignal& proto, int k_lo, int k_hi,
                       const ProbeProtocol& proto_cfg, Rng& rng);

struct SignPatternReport {
    double fL_q = 0;               // ||f_L||_q on the grid
    double square_function_q = 0;  // ||(sum |piece|^2)^(1/2)||_q
    double best_ratio = 0;         // max over sign draws of ||sum eps piece||_q / ||f_L||_q
};

/// f-hat_L = 1_[0,L], pieces = unit-band projections, signs by Khintchine
/// sampling.
SignPatternReport sign_pattern_lower_bound(long L, double q, int draws,
                                           const SampledSignal& proto, Rng& rng);

/// Model operator machinery: truncated tile sums at a fixed x as multipliers
/// in theta.
struct ModelOperator {
    const std::vector<Tile>* tiles = nullptr;
    const CoeffTable* coeffs = nullptr;

    /// sum over tiles with |I_s| < 2^kcut of c_s phi_s(x, theta)
    cplx sum(double x, double theta, int kcut) const;

    /// multiplier row m_k(theta) on a theta-grid for all cut levels
    std::vector<cvec> rows(double x, const std::vector<double>& theta_grid,
                           const std::vector<int>& kcuts) const;
};

/// Probe-estimated M_2*-style value at one x: sup over g of
/// || sup_k |IFT_theta(m_k g-hat)| ||_2 with g on the theta grid of `proto`.
double model_m2star_at(const ModelOperator& op, double x, const SampledSignal& proto,
                       const std::vector<int>& kcuts, const ProbeProtocol& proto_cfg, Rng& rng);


}  // namespace rtlab
