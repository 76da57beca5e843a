#include "rtlab/seqnorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rtlab {

VecSeq VecSeq::scalars(std::vector<std::complex<double>> xs, long start) {
    VecSeq s;
    s.index_start = start;
    s.values.reserve(xs.size());
    for (auto z : xs) s.values.push_back({z});
    return s;
}

VecSeq VecSeq::scalars_real(const std::vector<double>& xs, long start) {
    std::vector<std::complex<double>> z(xs.begin(), xs.end());
    return scalars(std::move(z), start);
}

double vec_norm(const std::vector<std::complex<double>>& v) {
    double s = 0;
    for (auto z : v) s += std::norm(z);
    return std::sqrt(s);
}

double vec_dist(const std::vector<std::complex<double>>& a,
                const std::vector<std::complex<double>>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

namespace {

double sup_norm(const VecSeq& seq) {
    double m = 0;
    for (const auto& v : seq.values) m = std::max(m, vec_norm(v));
    return m;
}

// chain value for a fixed increasing index set
double chain_value(const VecSeq& seq, const std::vector<std::size_t>& idx, double r) {
    double s = 0;
    for (std::size_t m = 1; m < idx.size(); ++m) {
        double d = vec_dist(seq.values[idx[m]], seq.values[idx[m - 1]]);
        s += std::pow(d, r);
    }
    return s;
}

double homogeneous_exact(const VecSeq& seq, double r) {
    // best[j] = max over chains ending at j of sum of increment^r;
    // the objective is additive over consecutive picks, so this equals the
    // sup over all increasing subsequences
    const std::size_t n = seq.size();
    std::vector<double> best(n, 0.0);
    double top = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            double d = vec_dist(seq.values[j], seq.values[i]);
            best[j] = std::max(best[j], best[i] + std::pow(d, r));
        }
        top = std::max(top, best[j]);
    }
    return std::pow(top, 1.0 / r);
}

double homogeneous_lower(const VecSeq& seq, double r) {
    const std::size_t n = seq.size();
    if (n < 2) return 0.0;
    // consecutive-differences chain, then greedy interior deletions while
    // they increase the sum; any surviving chain certifies a lower bound
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    double cur = chain_value(seq, idx, r);
    bool improved = true;
    while (improved && idx.size() > 2) {
        improved = false;
        for (std::size_t p = 1; p + 1 < idx.size(); ++p) {
            double dl = std::pow(vec_dist(seq.values[idx[p]], seq.values[idx[p - 1]]), r);
            double dr = std::pow(vec_dist(seq.values[idx[p + 1]], seq.values[idx[p]]), r);
            double dj = std::pow(vec_dist(seq.values[idx[p + 1]], seq.values[idx[p - 1]]), r);
            if (dj > dl + dr) {
                cur += dj - dl - dr;
                idx.erase(idx.begin() + long(p));
                improved = true;
                break;
            }
        }
    }
    return std::pow(cur, 1.0 / r);
}

}  // namespace

double variation_norm(const VecSeq& seq, double r, VariationMode mode) {
    if (seq.size() == 0) throw std::invalid_argument("variation_norm: empty sequence");
    if (r < 1.0) throw std::invalid_argument("variation_norm: r must be >= 1");
    double hom = (mode == VariationMode::exact) ? homogeneous_exact(seq, r)
                                                : homogeneous_lower(seq, r);
    return sup_norm(seq) + hom;
}

double oscillation_norm(const VecSeq& seq, const PartitionPoints& U, OscAnchor anchor) {
    if (U.u.size() < 2) throw std::invalid_argument("oscillation_norm: need J >= 2");
    for (std::size_t j = 1; j < U.u.size(); ++j)
        if (U.u[j] <= U.u[j - 1])
            throw std::invalid_argument("oscillation_norm: u must be strictly increasing");
    if (U.u.front() < seq.index_start || U.u.back() >= seq.index_end())
        throw std::invalid_argument("oscillation_norm: partition outside index range");

    double total = 0;
    for (std::size_t j = 0; j + 1 < U.u.size(); ++j) {
        const auto& ref = (anchor == OscAnchor::left)
                              ? seq.values[std::size_t(U.u[j] - seq.index_start)]
                              : seq.values[std::size_t(U.u[j + 1] - seq.index_start)];
        double blk = 0;
        for (long k = U.u[j]; k < U.u[j + 1]; ++k) {
            blk = std::max(blk, vec_dist(seq.values[std::size_t(k - seq.index_start)], ref));
        }
        total += blk * blk;
    }
    return std::sqrt(total);
}

double osc_var_norm(const VecSeq& seq, const PartitionPoints& U, double r) {
    return oscillation_norm(seq, U, OscAnchor::left) + variation_norm(seq, r);
}

CoveringResult covering_number(const VecSeq& seq, double lambda) {
    if (lambda <= 0) throw std::invalid_argument("covering_number: lambda must be positive");
    const std::size_t n = seq.size();
    if (n == 0) throw std::invalid_argument("covering_number: empty sequence");

    if (n <= 18) {
        std::vector<std::uint64_t> cover(n, 0);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < n; ++k)
                if (vec_dist(seq.values[c], seq.values[k]) <= lambda) cover[c] |= 1ull << k;
        const std::uint64_t all = (1ull << n) - 1;
        // exact set cover by subset enumeration, smallest cardinality first
        for (std::size_t m = 1; m <= n; ++m) {
            std::vector<std::size_t> pick(m);
            for (std::size_t i = 0; i < m; ++i) pick[i] = i;
            while (true) {
                std::uint64_t u = 0;
                for (auto p : pick) u |= cover[p];
                if (u == all) return {m, true};
                // next combination
                long i = long(m) - 1;
                while (i >= 0 && pick[std::size_t(i)] == n - m + std::size_t(i)) --i;
                if (i < 0) break;
                ++pick[std::size_t(i)];
                for (std::size_t j = std::size_t(i) + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        return {n, true};  // unreachable: singletons always cover
    }

    // greedy upper bound
    std::vector<bool> covered(n, false);
    std::size_t left = n, cnt = 0;
    while (left > 0) {
        std::size_t bestc = 0, bestgain = 0;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t gain = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (!covered[k] && vec_dist(seq.values[c], seq.values[k]) <= lambda) ++gain;
            if (gain > bestgain) {
                bestgain = gain;
                bestc = c;
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            if (!covered[k] && vec_dist(seq.values[bestc], seq.values[k]) <= lambda) {
                covered[k] = true;
                --left;
            }
        ++cnt;
    }
    return {cnt, false};
}

double entropy_functional(const VecSeq& seq, double r) {
    const std::size_t n = seq.size();
    std::vector<double> dists;
    double diam = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = vec_dist(seq.values[i], seq.values[j]);
            if (d > 0) dists.push_back(d);
            diam = std::max(diam, d);
        }
    if (dists.empty()) return 0.0;
    std::sort(dists.begin(), dists.end());
    dists.erase(std::unique(dists.begin(), dists.end()), dists.end());

    // M_lambda is a step function with breakpoints at pairwise distances; on
    // [d_i, d_{i+1}) the product lambda M^(1/r) peaks approaching d_{i+1}
    double sup = 0;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        double lam = dists[i];
        auto m = covering_number(seq, lam);
        sup = std::max(sup, lam * std::pow(double(m.count), 1.0 / r));
        double next = (i + 1 < dists.size()) ? dists[i + 1] : diam;
        if (next > lam) {
            // just below the next breakpoint, M is still M(lam)
            sup = std::max(sup, std::nexttoward(next, 0.0) * std::pow(double(m.count), 1.0 / r));
        }
    }
    return sup;
}

std::string norm_json(const std::string& norm_name, double r, const std::string& anchor,
                      double value, const std::string& mode) {
    nlohmann::json j;
    j["norm_name"] = norm_name;
    j["r"] = r;
    j["anchor"] = anchor;
    j["value"] = value;
    j["mode"] = mode;
    return j.dump();
}

VecSeq seq_from_csv(const std::string& text) {
    VecSeq out;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    bool have_start = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first && line.find("index") != std::string::npos) {
            first = false;
            continue;
        }
        first = false;
        std::istringstream ls(line);
        std::string tok;
        std::vector<double> nums;
        while (std::getline(ls, tok, ',')) nums.push_back(std::stod(tok));
        if (nums.size() < 3 || nums.size() % 2 == 0)
            throw std::invalid_argument("seq_from_csv: expect index,re_1,im_1,...");
        if (!have_start) {
            out.index_start = long(nums[0]);
            have_start = true;
        }
        std::vector<std::complex<double>> v;
        for (std::size_t i = 1; i + 1 < nums.size(); i += 2) v.emplace_back(nums[i], nums[i + 1]);
        out.values.push_back(std::move(v));
    }
    return out;
}

}  // namespace rtlab
