#include "rtlab/grid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rtlab {

std::pair<GridInterval, GridInterval> GridInterval::sons() const {
    // 2^i (l + L/N) = 2^(i-1) (2l + q + L'/N) with 2L = qN + L'
    long q = (2 * L) / N;
    long Lp = (2 * L) % N;
    GridInterval s1{i - 1, 2 * l + q, Lp, N};
    GridInterval s2{i - 1, 2 * l + q + 1, Lp, N};
    return {s1, s2};
}

std::string GridInterval::str() const {
    return "[" + rat_str(left()) + ", " + rat_str(right()) + "]";
}

std::pair<Rat, Rat> endpoints(const GridInterval& w) {
    if (!w.valid()) throw std::invalid_argument("endpoints: malformed grid interval");
    return {w.left(), w.right()};
}

Relation relate_endpoints(const Rat& a0, const Rat& a1, const Rat& b0, const Rat& b1) {
    if (a1 <= b0 || b1 <= a0) return Relation::disjoint;
    if (a0 >= b0 && a1 <= b1) return Relation::a_inside_b;
    if (b0 >= a0 && b1 <= a1) return Relation::b_inside_a;
    return Relation::violation;
}

Relation relate(const GridInterval& a, const GridInterval& b) {
    return relate_endpoints(a.left(), a.right(), b.left(), b.right());
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::disjoint: return "disjoint";
        case Relation::a_inside_b: return "a_inside_b";
        case Relation::b_inside_a: return "b_inside_a";
        case Relation::violation: return "violation";
    }
    return "?";
}

bool GridSpec::valid() const {
    if (N == 1) return true;
    return N >= 3 && N % 2 == 1 && j >= 0 && j < N - 1 && L >= 0 && L < N;
}

std::optional<long> GridSpec::offset_at_scale(long i) const {
    if (N == 1) return 0;
    const long p = N - 1;
    long k = ((j - i) % p + p) % p;  // halvings from the nearest native scale above
    if (!saturated && k != 0) return std::nullopt;
    // offset doubles with each halving; 2^(N-1) == 1 (mod N) keeps it consistent
    long off = L % N;
    for (long t = 0; t < k; ++t) off = (2 * off) % N;
    return off;
}

std::vector<GridInterval> enumerate_grid(const GridSpec& spec, long scale_lo, long scale_hi,
                                         const Rat& w0, const Rat& w1) {
    if (!spec.valid()) throw std::invalid_argument("enumerate_grid: malformed spec");
    std::vector<GridInterval> out;
    if (w1 <= w0) return out;
    for (long i = scale_lo; i <= scale_hi; ++i) {
        auto off = spec.offset_at_scale(i);
        if (!off) continue;
        // [2^i(l + off/N), 2^i(l + off/N + 1)] meets [w0, w1) iff
        //   l > w0 2^-i - off/N - 1   and   l < w1 2^-i - off/N
        Rat t0 = w0 / pow2(i) - Rat(*off, spec.N);
        Rat t1 = w1 / pow2(i) - Rat(*off, spec.N);
        BigInt lmin = rat_floor(t0 - 1) + 1;  // l + 1 > t0
        BigInt lmax = rat_ceil(t1) - 1;       // l < t1
        for (BigInt l = lmin; l <= lmax; ++l) {
            GridInterval g{i, long(l), *off, spec.N};
            // defensive exact filter at huge scales
            if (g.right() > w0 && g.left() < w1) out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end(), [](const GridInterval& a, const GridInterval& b) {
        if (a.i != b.i) return a.i < b.i;
        return a.left() < b.left();
    });
    return out;
}

GridReport verify_intervals(const std::vector<GridInterval>& v) {
    GridReport rep;
    rep.method = "pairwise";
    for (std::size_t a = 0; a < v.size(); ++a) {
        for (std::size_t b = a + 1; b < v.size(); ++b) {
            ++rep.checked_pairs;
            if (relate(v[a], v[b]) == Relation::violation) {
                rep.violations.push_back({v[a], v[b]});
            }
        }
    }
    return rep;
}

namespace {

// A violation between two full-tiling scales exists iff a coarse endpoint is
// interior to a fine interval, and whether the endpoint lattice lands on the
// fine lattice is position independent: 2^(c-f) Lc == Lf (mod N) decides the
// whole scale pair at once. One modular certificate per pair, plus a witness
// search restricted to the window when misaligned.
GridReport verify_by_scale_pairs(const GridSpec& spec, const std::vector<long>& scales,
                                 const Rat& w0, const Rat& w1) {
    GridReport rep;
    rep.method = "scale-pair";
    for (std::size_t ci = 0; ci < scales.size(); ++ci) {
        long c = scales[ci];
        auto coff = spec.offset_at_scale(c);
        for (std::size_t fi = 0; fi < ci; ++fi) {
            long f = scales[fi];
            auto foff = spec.offset_at_scale(f);
            ++rep.checked_pairs;
            long N = spec.N;
            BigInt p = boost::multiprecision::powm(BigInt(2), BigInt(c - f), BigInt(N));
            bool aligned = ((p * *coff - *foff) % N == 0);
            if (aligned) continue;
            // witness: a coarse endpoint near the window whose straddling fine
            // interval still meets the window, so the brute scan would see it
            Rat t0 = w0 / pow2(c) - Rat(*coff, N);
            for (BigInt l = rat_floor(t0) - 1; l <= rat_floor(t0) + 3; ++l) {
                GridInterval big{c, long(l), *coff, N};
                if (big.right() <= w0 || big.left() >= w1) continue;
                for (const Rat& e : {big.left(), big.right()}) {
                    Rat tf = e / pow2(f) - Rat(*foff, N);
                    GridInterval small{f, long(rat_floor(tf)), *foff, N};
                    if (small.right() <= w0 || small.left() >= w1) continue;
                    if (small.left() < e && e < small.right()) {
                        rep.violations.push_back({small, big});
                        goto next_pair;
                    }
                }
            }
        next_pair:;
        }
    }
    return rep;
}

}  // namespace

GridReport verify_grid(const GridSpec& spec, long scale_lo, long scale_hi, const Rat& w0,
                       const Rat& w1, std::uint64_t pair_budget) {
    if (!spec.valid()) throw std::invalid_argument("verify_grid: malformed spec");
    std::vector<long> scales;
    Rat span = w1 - w0;
    BigInt total = 0;
    bool overflow = false;
    for (long i = scale_lo; i <= scale_hi; ++i) {
        if (!spec.offset_at_scale(i)) continue;
        scales.push_back(i);
        // interval count at this scale ~ span / 2^i + 1
        BigInt cnt = rat_floor(span / pow2(i)) + 2;
        total += cnt;
        if (total > BigInt(4'000'000'000ull)) overflow = true;
    }
    if (!overflow && total * total / 2 <= BigInt(pair_budget)) {
        auto v = enumerate_grid(spec, scale_lo, scale_hi, w0, w1);
        return verify_intervals(v);
    }
    return verify_by_scale_pairs(spec, scales, w0, w1);
}

std::uint64_t count_shared_intervals(const std::vector<GridSpec>& specs, long scale_lo,
                                     long scale_hi, const Rat& w0, const Rat& w1) {
    // (i, l, L) identifies an interval uniquely at fixed N
    std::map<std::tuple<long, long, long, long>, int> seen;
    std::uint64_t shared = 0;
    int spec_id = 0;
    for (const auto& s : specs) {
        auto v = enumerate_grid(s, scale_lo, scale_hi, w0, w1);
        for (const auto& g : v) {
            auto key = std::make_tuple(g.i, g.l, g.L, g.N);
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen.emplace(key, spec_id);
            } else if (it->second != spec_id) {
                ++shared;
            }
        }
        ++spec_id;
    }
    return shared;
}

std::string grid_spec_json(const GridSpec& spec) {
    nlohmann::json j;
    j["N"] = spec.N;
    j["j"] = spec.j;
    j["L"] = spec.L;
    j["saturated"] = spec.saturated;
    return j.dump();
}

GridSpec grid_spec_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    GridSpec s;
    s.N = j.at("N").get<long>();
    s.j = j.value("j", 0l);
    s.L = j.value("L", 0l);
    s.saturated = j.value("saturated", false);
    if (!s.valid()) throw std::invalid_argument("grid spec: invalid N/j/L");
    return s;
}

std::string enumeration_csv(const std::vector<GridInterval>& v) {
    std::ostringstream os;
    os << "i,l,L,N,left_num,left_den\n";
    for (const auto& g : v) {
        Rat a = g.left();
        os << g.i << "," << g.l << "," << g.L << "," << g.N << "," << num(a).str() << ","
           << den(a).str() << "\n";
    }
    return os.str();
}

}  // namespace rtlab
