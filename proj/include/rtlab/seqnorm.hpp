#pragma once

#include <complex>
#include <string>
#include <vector>

namespace rtlab {

/// Finite sequence of vectors in C^d with contiguous integer indexing.
struct VecSeq {
    long index_start = 0;
    std::vector<std::vector<std::complex<double>>> values;

    std::size_t size() const { return values.size(); }
    long index_end() const { return index_start + long(values.size()); }  // exclusive
    std::size_t dim() const { return values.empty() ? 0 : values[0].size(); }

    static VecSeq scalars(std::vector<std::complex<double>> xs, long start = 0);
    static VecSeq scalars_real(const std::vector<double>& xs, long start = 0);
};

double vec_norm(const std::vector<std::complex<double>>& v);
double vec_dist(const std::vector<std::complex<double>>& a,
                const std::vector<std::complex<double>>& b);

enum class VariationMode { exact, dp_lower };

/// sup_k ||x_k|| + sup over increasing index chains of (sum ||increments||^r)^(1/r).
/// exact: O(n^2) chain dynamic program (the chain objective is additive over
/// consecutive picks, so the DP sup equals the sup over all subsequences).
/// dp_lower: certified lower bound from the consecutive-differences chain plus
/// greedy point deletion, for sequences too long for the quadratic pass.
double variation_norm(const VecSeq& seq, double r, VariationMode mode = VariationMode::exact);

enum class OscAnchor { left, right };

/// Partition points u_1 < ... < u_J inside the index range.
struct PartitionPoints {
    std::vector<long> u;
};

/// Block oscillation: sqrt( sum_j sup_{u_j <= k < u_{j+1}} ||x_k - x_anchor||^2 ),
/// anchored at the block's left endpoint u_j or right endpoint u_{j+1}.
double oscillation_norm(const VecSeq& seq, const PartitionPoints& U,
                        OscAnchor anchor = OscAnchor::left);

double osc_var_norm(const VecSeq& seq, const PartitionPoints& U, double r);

struct CoveringResult {
    std::size_t count = 0;
    bool exact = false;  // false: greedy upper bound (length > exact_limit)
};

/// Minimum number of closed radius-lambda balls centered at sequence elements
/// covering the element set; exact by subset search for length <= 18.
CoveringResult covering_number(const VecSeq& seq, double lambda);

/// sup over lambda in (0, diam] of lambda * M_lambda^(1/r); the sup is
/// attained approaching pairwise-distance breakpoints from below.
double entropy_functional(const VecSeq& seq, double r);

std::string norm_json(const std::string& norm_name, double r, const std::string& anchor,
                      double value, const std::string& mode);
VecSeq seq_from_csv(const std::string& text);

}  // namespace rtlab
