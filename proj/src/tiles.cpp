#include "rtlab/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rtlab/kernels.hpp"

namespace rtlab {

static const double TWO_PI = 6.283185307179586476925286766559;

GridInterval tile_omega(long i, long l) {
    long v = l - 18;
    long q = (v >= 0) ? v / 41 : -((-v + 40) / 41);  // floor division
    long L = v - 41 * q;
    return GridInterval{-i, q, L, 41};
}

bool interval_inside(const GridInterval& inner, const GridInterval& outer) {
    return inner.left() >= outer.left() && inner.right() <= outer.right();
}

bool xi_support_in_lower_half(long i, long l) {
    // [2^-i l/41, 2^-i (l+2)/41] inside the lower son of omega_{i,l}
    Rat sc = pow2(-i);
    Rat lo = sc * Rat(l, 41), hi = sc * Rat(l + 2, 41);
    GridInterval w = tile_omega(i, l);
    auto son1 = w.sons().first;
    return lo >= son1.left() && hi <= son1.right();
}

bool theta_support_in_upper_half(long i, long l) {
    Rat sc = pow2(-i);
    Rat lo = sc * (Rat(l, 41) + Rat(1, 16));
    Rat hi = sc * (Rat(l + 2, 41) + Rat(3, 8));
    GridInterval w = tile_omega(i, l);
    auto son2 = w.sons().second;
    return lo >= son2.left() && hi <= son2.right();
}

TileOrder tile_order(const Tile& s, const Tile& t) {
    if (s == t) return TileOrder::equal;
    bool le = interval_inside(s.I(), t.I()) && interval_inside(t.omega, s.omega);
    bool ge = interval_inside(t.I(), s.I()) && interval_inside(s.omega, t.omega);
    if (le && ge) return TileOrder::equal;
    if (le) return TileOrder::le;
    if (ge) return TileOrder::ge;
    return TileOrder::incomparable;
}

namespace {

long floor_div(long a, long b) {  // b > 0
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// I_s inside the dyadic interval [M 2^ts, (M+1) 2^ts]
bool time_inside(long i_s, long m_s, long ts, long M) {
    if (i_s > ts || ts - i_s >= 62) return false;
    return floor_div(m_s, 1l << (ts - i_s)) == M;
}

struct SizeCandidate {
    double value2 = -1;
    bool from_tile_top = false;
    std::size_t s0 = 0;   // deepest member (b) or top tile (a)
    long top_scale = 0;
    long top_m = 0;
    // tie-break key: lowest omega frequency, then leftmost top, then largest top
    Rat freq_key;
    Rat left_key;
};

bool better(const SizeCandidate& a, const SizeCandidate& b) {
    if (a.value2 != b.value2) return a.value2 > b.value2;
    if (a.freq_key != b.freq_key) return a.freq_key < b.freq_key;
    if (a.left_key != b.left_key) return a.left_key < b.left_key;
    return a.top_scale > b.top_scale;
}

// containment matrices shared by size/selection passes
struct TileRelations {
    std::vector<std::vector<bool>> omega_in_son2;  // [a][b]: omega_a inside omega_{b,2}
    std::vector<std::vector<bool>> son2_in_son2;   // [a][b]: omega_{a,2} inside omega_{b,2}

    explicit TileRelations(const std::vector<Tile>& tiles) {
        const std::size_t n = tiles.size();
        std::vector<std::pair<Rat, Rat>> full(n), son2(n);
        for (std::size_t k = 0; k < n; ++k) {
            full[k] = {tiles[k].omega.left(), tiles[k].omega.right()};
            auto s2 = tiles[k].omega.sons().second;
            son2[k] = {s2.left(), s2.right()};
        }
        omega_in_son2.assign(n, std::vector<bool>(n, false));
        son2_in_son2.assign(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                omega_in_son2[a][b] =
                    full[a].first >= son2[b].first && full[a].second <= son2[b].second;
                son2_in_son2[a][b] =
                    son2[a].first >= son2[b].first && son2[a].second <= son2[b].second;
            }
    }
};

// best 2-tree candidate over the subset; sums run in ascending tile order
SizeCandidate best_candidate(const std::vector<Tile>& tiles, const CoeffTable& coeffs,
                             const std::vector<std::size_t>& subset, const TileRelations& rel) {
    SizeCandidate best;
    if (subset.empty()) return best;
    long min_i = tiles[subset[0]].i;
    for (auto s : subset) min_i = std::min(min_i, tiles[s].i);
    // top scales run from each tile's own scale up to where an ancestor of
    // any tile covers its whole side of the time span; beyond that the member
    // set is frozen and the value halves per level
    long lo_pos = 0, hi_pos = 0;
    bool first = true;
    for (auto s : subset) {
        long L = tiles[s].m << (tiles[s].i - min_i);
        long R = (tiles[s].m + 1) << (tiles[s].i - min_i);
        if (first || L < lo_pos) lo_pos = L;
        if (first || R > hi_pos) hi_pos = R;
        first = false;
    }
    long extent = std::max({std::abs(lo_pos), std::abs(hi_pos), hi_pos - lo_pos});
    long cover_scale = min_i;
    while (cover_scale - min_i < 60 && (1l << (cover_scale - min_i)) < 2 * extent) ++cover_scale;
    ++cover_scale;  // one spare level

    for (auto s0 : subset) {
        const Tile& t0 = tiles[s0];
        // (a) s0 itself as a tile top
        {
            double e = std::norm(coeffs[s0]);
            for (auto s : subset)
                if (s != s0 && rel.omega_in_son2[s0][s] &&
                    time_inside(tiles[s].i, tiles[s].m, t0.i, t0.m))
                    e += std::norm(coeffs[s]);
            SizeCandidate cand;
            cand.value2 = std::ldexp(e, int(-t0.i));
            cand.from_tile_top = true;
            cand.s0 = s0;
            cand.top_scale = t0.i;
            cand.top_m = t0.m;
            cand.freq_key = t0.omega.left();
            cand.left_key = Rat(t0.m) * pow2(t0.i);
            if (better(cand, best)) best = cand;
        }
        // (b) virtual tops above s0: members need omega_{s,2} containing
        // omega_{s0,2}
        for (long ts = t0.i + 1; ts <= cover_scale; ++ts) {
            long M = floor_div(t0.m, 1l << (ts - t0.i));
            double e = 0;
            for (auto s : subset)
                if (rel.son2_in_son2[s0][s] && time_inside(tiles[s].i, tiles[s].m, ts, M))
                    e += std::norm(coeffs[s]);
            if (e <= 0) continue;
            SizeCandidate cand;
            cand.value2 = std::ldexp(e, int(-ts));
            cand.from_tile_top = false;
            cand.s0 = s0;
            cand.top_scale = ts;
            cand.top_m = M;
            cand.freq_key = t0.omega.center();  // left endpoint of omega_{s0,2}
            cand.left_key = Rat(M) * pow2(ts);
            if (better(cand, best)) best = cand;
        }
    }
    return best;
}

GridInterval descend_leftmost(GridInterval w, long target_scale) {
    while (w.i > target_scale) w = w.sons().first;
    return w;
}

}  // namespace

double tree_size2(const std::vector<Tile>& tiles, const CoeffTable& coeffs,
                  const std::vector<std::size_t>& members, long top_scale) {
    (void)tiles;
    double e = 0;
    for (auto s : members) e += std::norm(coeffs[s]);
    return std::ldexp(e, int(-top_scale));
}

double collection_size2(const std::vector<Tile>& tiles, const CoeffTable& coeffs,
                        const std::vector<std::size_t>& subset) {
    TileRelations rel(tiles);
    auto cand = best_candidate(tiles, coeffs, subset, rel);
    return std::max(cand.value2, 0.0);
}

Forest select_forest(const std::vector<Tile>& tiles, const CoeffTable& coeffs) {
    Forest out;
    std::vector<std::size_t> alive;
    for (std::size_t k = 0; k < tiles.size(); ++k) {
        if (!tiles[k].heisenberg_exact())
            throw std::invalid_argument("select_forest: tile violates |I||omega| = 1");
        if (std::norm(coeffs[k]) > 0)
            alive.push_back(k);
        else
            out.zero_residual.push_back(k);
    }
    if (alive.empty()) return out;

    TileRelations rel(tiles);
    auto cand = best_candidate(tiles, coeffs, alive, rel);
    double size2 = cand.value2;
    if (size2 <= 0) {
        out.zero_residual.insert(out.zero_residual.end(), alive.begin(), alive.end());
        return out;
    }
    long n = long(std::floor(-0.5 * std::log2(size2)));

    const long max_levels = 4000;
    for (long level = 0; level < max_levels && !alive.empty(); ++level, ++n) {
        Forest::Level lev;
        lev.n = n;
        while (!alive.empty()) {
            cand = best_candidate(tiles, coeffs, alive, rel);
            if (cand.value2 <= std::ldexp(1.0, int(-2 * (n + 1)))) break;
            // completed tree: everything under the selected top
            TreeSel tree;
            tree.top_scale = cand.top_scale;
            tree.top_m = cand.top_m;
            tree.size2 = cand.value2;
            const Tile& t0 = tiles[cand.s0];
            GridInterval omega_top =
                cand.from_tile_top ? t0.omega
                                   : descend_leftmost(t0.omega.sons().second, -cand.top_scale);
            tree.omega_top = omega_top;
            std::vector<std::size_t> keep;
            keep.reserve(alive.size());
            for (auto s : alive) {
                if (time_inside(tiles[s].i, tiles[s].m, cand.top_scale, cand.top_m) &&
                    interval_inside(omega_top, tiles[s].omega))
                    tree.members.push_back(s);
                else
                    keep.push_back(s);
            }
            alive.swap(keep);
            lev.trees.push_back(std::move(tree));
        }
        if (!lev.trees.empty()) out.levels.push_back(std::move(lev));
    }
    if (!alive.empty())
        throw std::runtime_error("select_forest: level cap exceeded (degenerate coefficients)");
    return out;
}

StandardDecomposition standard_decomposition(const std::vector<Tile>& tiles,
                                             const Quasitree& qt) {
    if (den(qt.xi_top) % 3 != 0)
        throw std::invalid_argument(
            "standard_decomposition: xi_top must carry a factor 3 in its denominator");
    StandardDecomposition out;
    for (auto s : qt.members) {
        Rat mid = tiles[s].omega.center();
        if (qt.xi_top == mid)
            throw std::logic_error("standard_decomposition: xi_top hit a grid midpoint");
        if (qt.xi_top < mid)
            out.one_tree.push_back(s);
        else
            out.two_tree.push_back(s);
    }
    return out;
}

std::vector<std::size_t> saturation(const std::vector<Tile>& tiles,
                                    const std::vector<std::size_t>& ambient,
                                    const GridInterval& omega_top) {
    std::vector<std::size_t> out;
    for (auto s : ambient)
        if (interval_inside(omega_top, tiles[s].omega)) out.push_back(s);
    return out;
}

namespace {

// window 2^l I_T + 2^l m |I_T| as exact endpoints
std::pair<Rat, Rat> block_window(const GridInterval& I_top, long l, long m) {
    Rat A = I_top.left(), B = I_top.right();
    Rat len = (B - A) * pow2(l);
    Rat C = (A + B) / 2 + len * m;
    return {C - len / 2, C + len / 2};
}

Rat overlap(const Rat& a0, const Rat& a1, const Rat& b0, const Rat& b1) {
    Rat lo = std::max(a0, b0), hi = std::min(a1, b1);
    return (hi > lo) ? hi - lo : Rat(0);
}

}  // namespace

Quasitree tile_block(const std::vector<Tile>& tiles, const std::vector<std::size_t>& saturated,
                     const GridInterval& I_top, const Rat& xi_top, long l, long m) {
    Quasitree qt;
    auto [w0, w1] = block_window(I_top, l, m);
    auto [p0, p1] = block_window(I_top, l, m - 1);
    qt.I_left = w0 - (w1 - w0) / 2;  // top interval = 2 x window
    qt.I_right = w1 + (w1 - w0) / 2;
    qt.xi_top = xi_top;
    for (auto s : saturated) {
        GridInterval I = tiles[s].I();
        Rat a = I.left(), b = I.right();
        Rat half = (b - a) / 2;
        Rat ov = overlap(a, b, w0, w1);
        if (ov < half) continue;
        if (ov == half) {
            Rat ov_prev = overlap(a, b, p0, p1);
            if (ov_prev == half) continue;  // the previous block owns the tie
        }
        qt.members.push_back(s);
    }
    return qt;
}

std::pair<long, long> tile_block_range(const std::vector<Tile>& tiles,
                                       const std::vector<std::size_t>& saturated,
                                       const GridInterval& I_top, long l) {
    if (saturated.empty()) return {0, -1};
    Rat lo = tiles[saturated[0]].I().left(), hi = tiles[saturated[0]].I().right();
    for (auto s : saturated) {
        lo = std::min(lo, tiles[s].I().left());
        hi = std::max(hi, tiles[s].I().right());
    }
    Rat len = (I_top.right() - I_top.left()) * pow2(l);
    Rat C = (I_top.left() + I_top.right()) / 2;
    long mlo = long(rat_floor((lo - C) / len)) - 1;
    long mhi = long(rat_floor((hi - C) / len)) + 1;
    return {mlo, mhi};
}

int counting_function(const std::vector<TreeSel>& forest, const Rat& x) {
    int cnt = 0;
    for (const auto& t : forest) {
        Rat a = Rat(t.top_m) * pow2(t.top_scale);
        Rat b = Rat(t.top_m + 1) * pow2(t.top_scale);
        if (x >= a && x < b) ++cnt;
    }
    return cnt;
}

PhiSplit phi_split(const SampledSignal& phi_slice, double I_center, double I_length,
                   double xi_top, int l) {
    PhiSplit out;
    out.localized = SampledSignal::zeros(phi_slice.origin, phi_slice.spacing, phi_slice.size());
    out.smooth = phi_slice;
    if (l == 0) return out;

    const double width = std::ldexp(I_length, l - 1);
    auto eta = [&](double x) {
        double u = std::abs(x - I_center) / width;
        if (u <= 0.25) return 1.0;
        if (u >= 0.5) return 0.0;
        return 1.0 - smoothstep7(4.0 * (u - 0.25));
    };
    cplx ip{};
    double denom = 0;
    for (std::size_t j = 0; j < phi_slice.size(); ++j) {
        double x = phi_slice.x(j), e = eta(x);
        if (e == 0.0) continue;
        double ph = -TWO_PI * xi_top * x;
        ip += phi_slice.samples[j] * cplx(std::cos(ph), std::sin(ph)) * e;
        denom += e;
    }
    ip *= phi_slice.spacing;
    denom *= phi_slice.spacing;
    for (std::size_t j = 0; j < phi_slice.size(); ++j) {
        double x = phi_slice.x(j), e = eta(x);
        double ph = TWO_PI * xi_top * x;
        cplx carrier = cplx(std::cos(ph), std::sin(ph)) * e * (ip / denom);
        out.smooth.samples[j] = carrier + phi_slice.samples[j] * (1.0 - e);
        out.localized.samples[j] = phi_slice.samples[j] - out.smooth.samples[j];
    }
    return out;
}

std::string tiles_json(const std::vector<Tile>& tiles) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : tiles) {
        nlohmann::json j;
        j["i"] = t.i;
        j["m"] = t.m;
        j["omega"] = {{"i", t.omega.i}, {"l", t.omega.l}, {"L", t.omega.L}, {"N", t.omega.N}};
        arr.push_back(j);
    }
    return arr.dump();
}

std::string forest_jsonl(const Forest& forest) {
    std::ostringstream os;
    for (const auto& lev : forest.levels) {
        for (const auto& t : lev.trees) {
            nlohmann::json j;
            j["n"] = lev.n;
            j["top"] = {{"scale", t.top_scale},
                        {"m", t.top_m},
                        {"omega", {{"i", t.omega_top.i},
                                   {"l", t.omega_top.l},
                                   {"L", t.omega_top.L},
                                   {"N", t.omega_top.N}}}};
            j["members"] = t.members;
            os << j.dump() << "\n";
        }
    }
    return os.str();
}

}  // namespace rtlab
