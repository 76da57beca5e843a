#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtlab/rational.hpp"

namespace rtlab {

/// Interval [2^i (l + L/N), 2^i (l + L/N + 1)].
/// N = 1 encodes the plain dyadic lattice; odd N >= 3 gives the shifted
/// families whose consistency across scales rests on 2^(N-1) == 1 (mod N).
struct GridInterval {
    long i = 0;   // length exponent, |I| = 2^i
    long l = 0;   // lattice index
    long L = 0;   // offset numerator, 0 <= L < N
    long N = 1;   // offset modulus, odd >= 3, or 1

    Rat left() const { return pow2(i) * (Rat(l) + Rat(L, N)); }
    Rat right() const { return pow2(i) * (Rat(l) + Rat(L, N) + 1); }
    Rat length() const { return pow2(i); }
    Rat center() const { return pow2(i) * (Rat(2 * l) + Rat(2 * L, N) + 1) / 2; }

    bool valid() const { return (N == 1 || (N >= 3 && N % 2 == 1)) && L >= 0 && L < N; }

    std::pair<GridInterval, GridInterval> sons() const;

    bool operator==(const GridInterval& o) const {
        return i == o.i && l == o.l && L == o.L && N == o.N;
    }

    std::string str() const;
};

std::pair<Rat, Rat> endpoints(const GridInterval& w);

enum class Relation { disjoint, a_inside_b, b_inside_a, violation };

/// Classification by exact comparison; touching endpoints count as disjoint
/// interiors, equality reports as a_inside_b.
Relation relate(const GridInterval& a, const GridInterval& b);
Relation relate_endpoints(const Rat& a0, const Rat& a1, const Rat& b0, const Rat& b1);

const char* relation_name(Relation r);

struct GridSpec {
    long N = 1;
    long j = 0;             // scale residue mod N-1 (ignored for N = 1)
    long L = 0;
    bool saturated = false;

    bool valid() const;
    /// Is scale i populated, and with which offset numerator?
    /// Non-saturated families only carry scales i == j (mod N-1); the
    /// saturated closure fills every scale with the doubled-offset residue.
    std::optional<long> offset_at_scale(long i) const;
};

/// All member intervals with scale in [scale_lo, scale_hi] meeting the
/// half-open window [w0, w1), sorted by (scale, left endpoint).
std::vector<GridInterval> enumerate_grid(const GridSpec& spec, long scale_lo, long scale_hi,
                                         const Rat& w0, const Rat& w1);

struct GridViolation {
    GridInterval a, b;
};

struct GridReport {
    std::uint64_t checked_pairs = 0;
    std::vector<GridViolation> violations;
    // "pairwise" = brute force over enumerated intervals,
    // "boundary"  = arithmetically equivalent endpoint-straddle scan used
    //               when the enumeration would not fit in memory
    std::string method;
};

/// Exhaustive nestedness check over one family.
GridReport verify_grid(const GridSpec& spec, long scale_lo, long scale_hi, const Rat& w0,
                       const Rat& w1, std::uint64_t pair_budget = 4'000'000);

/// Same check over an explicit interval list (for corrupted-family controls).
GridReport verify_intervals(const std::vector<GridInterval>& intervals);

/// Count intervals shared between distinct (j, L) families at fixed N.
std::uint64_t count_shared_intervals(const std::vector<GridSpec>& specs, long scale_lo,
                                     long scale_hi, const Rat& w0, const Rat& w1);

std::string grid_spec_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const std::string& text);
std::string enumeration_csv(const std::vector<GridInterval>& v);

}  // namespace rtlab
