#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/grid.hpp"
#include "rtlab/signal.hpp"

namespace rtlab {

/// Time-frequency rectangle I x omega with |I| |omega| = 1 exactly.
/// I = [2^i m, 2^i (m+1)] on the plain dyadic time lattice, omega a frequency
/// grid interval at the dual scale.
struct Tile {
    long i = 0;  // time scale, |I| = 2^i
    long m = 0;  // time index
    GridInterval omega;

    GridInterval I() const { return GridInterval{i, m, 0, 1}; }
    bool heisenberg_exact() const { return omega.i == -i; }
    Rat omega_left() const { return omega.left(); }
    Rat omega_mid() const { return omega.center(); }

    /// modulation frequency of the attached packet: left(omega) + |omega| 18/41,
    /// which parks the packet's xi-support in the lower half of omega and its
    /// theta-support in the upper half
    Rat mod_freq() const { return omega.left() + omega.length() * Rat(18, 41); }

    bool operator==(const Tile& o) const { return i == o.i && m == o.m && omega == o.omega; }
};

/// omega_{i,l} = [2^-i (l-18)/41, 2^-i ((l-18)/41 + 1)] as an exact interval.
GridInterval tile_omega(long i, long l);

/// Spectral/θ support containments of the 41-adic packets, checked in exact
/// rational arithmetic.
bool xi_support_in_lower_half(long i, long l);
bool theta_support_in_upper_half(long i, long l);

enum class TileOrder { le, ge, incomparable, equal };

/// s <= s' iff I_s inside I_s' and omega_s' inside omega_s.
TileOrder tile_order(const Tile& s, const Tile& t);

bool interval_inside(const GridInterval& inner, const GridInterval& outer);

using CoeffTable = std::vector<cplx>;  // indexed like the tile vector

struct TreeSel {
    // top of the selected tree: time interval [2^ti tm, 2^ti (tm+1)] and a
    // frequency grid interval omega_top contained in every member's omega
    long top_scale = 0;
    long top_m = 0;
    GridInterval omega_top;
    double size2 = 0;  // squared size witnessed at selection
    std::vector<std::size_t> members;
};

struct Forest {
    struct Level {
        long n = 0;
        std::vector<TreeSel> trees;
    };
    std::vector<Level> levels;
    std::vector<std::size_t> zero_residual;  // tiles with zero coefficient
};

/// Squared size of one explicit 2-tree: (1/|I_T|) sum over members |c_s|^2.
double tree_size2(const std::vector<Tile>& tiles, const CoeffTable& coeffs,
                  const std::vector<std::size_t>& members, long top_scale);

/// Squared size of a tile subset: sup over 2-trees of (1/|I_T|) sum |c_s|^2,
/// by exact enumeration over (deepest member, dyadic top interval) pairs.
double collection_size2(const std::vector<Tile>& tiles, const CoeffTable& coeffs,
                        const std::vector<std::size_t>& subset);

/// Greedy selection: at level n, while size > 2^-(n+1) remove the completed
/// tree under a size-attaining 2-tree top; ties break to lowest top frequency,
/// then leftmost, then largest |I_T|.
Forest select_forest(const std::vector<Tile>& tiles, const CoeffTable& coeffs);

/// Quasitree with explicit top; xi_top must carry a factor 3 in its
/// denominator so it can never be a grid endpoint.
struct Quasitree {
    Rat I_left, I_right;
    Rat xi_top;
    std::vector<std::size_t> members;
};

struct StandardDecomposition {
    std::vector<std::size_t> one_tree;  // xi_top in the lower half of omega_s
    std::vector<std::size_t> two_tree;  // xi_top in the upper half
};

StandardDecomposition standard_decomposition(const std::vector<Tile>& tiles,
                                             const Quasitree& qt);

/// G(T) = members of the ambient set whose omega contains omega_top.
std::vector<std::size_t> saturation(const std::vector<Tile>& tiles,
                                    const std::vector<std::size_t>& ambient,
                                    const GridInterval& omega_top);

/// The window 2^l I_T + 2^l m |I_T| and the T_{l,m} overlap-majority rule.
Quasitree tile_block(const std::vector<Tile>& tiles, const std::vector<std::size_t>& saturated,
                     const GridInterval& I_top, const Rat& xi_top, long l, long m);

/// Indices m for which T_{l,m} can be nonempty for the given member set.
std::pair<long, long> tile_block_range(const std::vector<Tile>& tiles,
                                       const std::vector<std::size_t>& saturated,
                                       const GridInterval& I_top, long l);

/// N_F(x) = number of tree tops whose time interval contains x.
int counting_function(const std::vector<TreeSel>& forest, const Rat& x);

struct PhiSplit {
    SampledSignal localized;  // supported in 2^(l-1) I_s
    SampledSignal smooth;     // mean zero after demodulation by xi_top
};

/// Split of a packet slice phi_s(., theta) against a quasitree top frequency;
/// l = 0 returns (0, phi) by convention.
PhiSplit phi_split(const SampledSignal& phi_slice, double I_center, double I_length,
                   double xi_top, int l);

std::string tiles_json(const std::vector<Tile>& tiles);
std::string forest_jsonl(const Forest& forest);

}  // namespace rtlab
