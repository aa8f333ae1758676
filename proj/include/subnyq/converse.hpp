#pragma once

// Converse machinery. For B with orthonormal rows (m x n, k <= m), summing
// det(eps I_k + B_s^T B_s) over all k-subsets s gives a value that does not
// depend on B:
//
//   sum_s det(eps I + B_s^T B_s) = sum_{l=0}^{k} C(n-l, k-l) C(m, l) eps^{k-l}
//
// Since the minimum over states is at most the mean, the worst state obeys
//
//   min_s (1/n) log det(eps I + B_s^T B_s) <= (1/n)[log C(m,k) - log C(n,k)] + 2 sqrt(eps).

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "channel.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "parallel.hpp"

namespace subnyq {

inline constexpr std::uint64_t kSubsetCap = 1'000'000;
inline constexpr double kOrthonormalTol = 1e-8;
/// Ranks summed per chunk; fixed so the summation order ignores the worker count.
inline constexpr std::uint64_t kChunkSize = 4096;

struct ConverseCheck {
    double lhs_sum = 0.0;
    double rhs_closed = 0.0;
    double relative_error = 0.0;
    int n = 0, k = 0, m = 0;
    double eps = 0.0;
};

inline double orthonormality_residual(const RealMatrix& b) {
    return max_abs_deviation_from_identity(b * b.transpose());
}

namespace detail {

inline void check_subset_sizes(int n, int k, int m, std::uint64_t cap) {
    require<argument_error>(k >= 1 && k <= m && m <= n, "need 1 <= k <= m <= n");
    require<size_error>(binomial_saturating(n, k) <= cap, "C(n, k) exceeds the enumeration cap");
}

/// Visit every k-subset in colex order, split into fixed-size rank chunks.
/// fn(chunk_index, subset) is called sequentially within a chunk.
template <class Fn>
void for_each_subset_chunked(int n, int k, unsigned workers, Fn&& fn) {
    const std::uint64_t total = binomial_saturating(n, k);
    const std::uint64_t chunks = (total + kChunkSize - 1) / kChunkSize;
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunkSize;
        const std::uint64_t end = std::min(total, begin + kChunkSize);
        std::vector<int> subset = colex_unrank(begin, n, k);
        for (std::uint64_t r = begin; r < end; ++r) {
            fn(c, std::span<const int>(subset));
            next_colex(subset, n);
        }
    });
}

/// Sum without the orthonormality check, for fault-injection runs.
inline double subset_det_sum_unchecked(const RealMatrix& b, int k, double eps, unsigned workers) {
    const int n = static_cast<int>(b.cols());
    const std::uint64_t chunks = (binomial_saturating(n, k) + kChunkSize - 1) / kChunkSize;
    std::vector<KahanSum> partial(chunks);
    const RealMatrix identity = RealMatrix::Identity(k, k);
    for_each_subset_chunked(n, k, workers, [&](std::size_t c, std::span<const int> s) {
        const RealMatrix bs = select_columns(b, s);
        const RealMatrix g = eps * identity + bs.transpose() * bs;
        partial[c].add(g.determinant());
    });
    KahanSum total;
    for (const auto& p : partial) total.add(p.value());
    return total.value();
}

}  // namespace detail

/// sum over all k-subsets s of det(eps I_k + B_s^T B_s), by enumeration.
inline double subset_det_sum(const RealMatrix& b, int k, double eps, std::uint64_t cap = kSubsetCap,
                             unsigned workers = 1) {
    detail::require<argument_error>(eps >= 0.0, "subset_det_sum: eps must be nonnegative");
    detail::check_subset_sizes(static_cast<int>(b.cols()), k, static_cast<int>(b.rows()), cap);
    detail::require<precondition_error>(orthonormality_residual(b) <= kOrthonormalTol,
                                        "subset_det_sum: rows of B are not orthonormal");
    return detail::subset_det_sum_unchecked(b, k, eps, workers);
}

/// sum_{l=0}^{k} C(n-l, k-l) C(m, l) eps^{k-l}.
inline double subset_det_sum_closed(int n, int k, int m, double eps) {
    detail::require<argument_error>(k >= 0 && k <= m && m <= n, "subset_det_sum_closed: need k <= m <= n");
    detail::require<argument_error>(eps >= 0.0, "subset_det_sum_closed: eps must be nonnegative");
    long double acc = 0.0L;
    for (int l = 0; l <= k; ++l) {
        long double coeff;
        auto a = binomial_exact(n - l, k - l);
        auto b = binomial_exact(m, l);
        if (a && b && (*b == 0 || *a <= (~u128{0}) / *b))
            coeff = static_cast<long double>((*a) * (*b));
        else
            coeff = std::exp(static_cast<long double>(log_binomial(n - l, k - l) + log_binomial(m, l)));
        acc += coeff * std::pow(static_cast<long double>(eps), k - l);
    }
    return static_cast<double>(acc);
}

inline ConverseCheck make_converse_check(int n, int k, int m, double eps, double lhs) {
    ConverseCheck c;
    c.n = n;
    c.k = k;
    c.m = m;
    c.eps = eps;
    c.lhs_sum = lhs;
    c.rhs_closed = subset_det_sum_closed(n, k, m, eps);
    c.relative_error = std::abs(c.lhs_sum - c.rhs_closed) / std::max(c.rhs_closed, 1e-300);
    return c;
}

inline ConverseCheck converse_check(const RealMatrix& b, int k, double eps, std::uint64_t cap = kSubsetCap,
                                    unsigned workers = 1) {
    return make_converse_check(static_cast<int>(b.cols()), k, static_cast<int>(b.rows()), eps,
                               subset_det_sum(b, k, eps, cap, workers));
}

struct MinStateBound {
    /// (1/n)[log C(m,k) - log C(n,k)] + 2 sqrt(eps)
    double exact_form;
    /// alpha H(beta/alpha) - H(beta) + 2 sqrt(eps) + log(n+1)/n
    double entropy_form;
};

inline MinStateBound min_state_logdet_bound(int n, int k, int m, double eps) {
    detail::require<argument_error>(k >= 1 && k <= m && m <= n, "min_state_logdet_bound: need 1 <= k <= m <= n");
    detail::require<argument_error>(eps >= 0.0, "min_state_logdet_bound: eps must be nonnegative");
    const double nn = n;
    const double alpha = m / nn, beta = k / nn;
    const double root = 2.0 * std::sqrt(eps);
    return {(log_binomial(m, k) - log_binomial(n, k)) / nn + root,
            alpha * binary_entropy(std::min(1.0, beta / alpha)) - binary_entropy(beta) + root + std::log(nn + 1.0) / nn};
}

/// (W/2)[H(beta) - alpha H(beta/alpha) - 2/sqrt(SNR_min) - log(n+1)/n]; may be negative.
inline double minimax_lower_bound(int n, int k, int m, double snr_min, double bandwidth) {
    detail::require<argument_error>(k >= 1 && k <= m && m <= n, "minimax_lower_bound: need 1 <= k <= m <= n");
    detail::require<argument_error>(snr_min > 0.0, "minimax_lower_bound: snr_min must be positive");
    const double nn = n;
    const double alpha = m / nn, beta = k / nn;
    return 0.5 * bandwidth *
           (binary_entropy(beta) - alpha * binary_entropy(std::min(1.0, beta / alpha)) - 2.0 / std::sqrt(snr_min) -
            std::log(nn + 1.0) / nn);
}

struct StateLogdetStats {
    double min_value = std::numeric_limits<double>::infinity();
    double max_value = -std::numeric_limits<double>::infinity();
    double mean_value = 0.0;
    ChannelState argmin;
};

/// min / max / mean over all k-subsets of (1/n) log det(eps I + B_s^T B_s).
/// With eps = 0 a singular B_s contributes -inf.
inline StateLogdetStats state_logdet_stats(const RealMatrix& b, int k, double eps, std::uint64_t cap = kSubsetCap,
                                           unsigned workers = 1) {
    const int n = static_cast<int>(b.cols());
    detail::require<argument_error>(k >= 1 && k <= b.rows(), "state_logdet_stats: need 1 <= k <= m");
    detail::require<size_error>(binomial_saturating(n, k) <= cap, "C(n, k) exceeds the enumeration cap");
    const std::uint64_t chunks = (binomial_saturating(n, k) + kChunkSize - 1) / kChunkSize;
    std::vector<StateLogdetStats> part(chunks);
    std::vector<KahanSum> sums(chunks);
    detail::for_each_subset_chunked(n, k, workers, [&](std::size_t c, std::span<const int> s) {
        const RealMatrix bs = select_columns(b, s);
        RealMatrix g = bs.transpose() * bs;
        g = 0.5 * (g + g.transpose()).eval();
        const RealVector lambda = symmetric_eigenvalues(g);
        double v = 0.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            const double x = eps + lambda(i);
            v += x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
        }
        v /= n;
        auto& p = part[c];
        if (v < p.min_value) {
            p.min_value = v;
            p.argmin = ChannelState(std::vector<int>(s.begin(), s.end()));
        }
        p.max_value = std::max(p.max_value, v);
        sums[c].add(v);
    });
    StateLogdetStats out;
    KahanSum total;
    for (std::size_t c = 0; c < chunks; ++c) {
        if (part[c].min_value < out.min_value) {
            out.min_value = part[c].min_value;
            out.argmin = part[c].argmin;
        }
        out.max_value = std::max(out.max_value, part[c].max_value);
        total.add(sums[c].value());
    }
    out.mean_value = total.value() / double(binomial_saturating(n, k));
    return out;
}

struct SandwichResult {
    double min_state_value;
    double deterministic_upper;
    ChannelState argmin;
};

/// Enumerates all states and checks the worst one against the deterministic
/// upper bound; a violation throws verification_error.
inline SandwichResult per_instance_sandwich(const RealMatrix& b, int k, double eps, std::uint64_t cap = kSubsetCap,
                                            unsigned workers = 1) {
    const int n = static_cast<int>(b.cols());
    const int m = static_cast<int>(b.rows());
    detail::check_subset_sizes(n, k, m, cap);
    detail::require<precondition_error>(orthonormality_residual(b) <= kOrthonormalTol,
                                        "per_instance_sandwich: rows of B are not orthonormal");
    const auto stats = state_logdet_stats(b, k, eps, cap, workers);
    const double upper = min_state_logdet_bound(n, k, m, eps).exact_form;
    if (stats.min_value > upper + 1e-12)
        throw verification_error("per_instance_sandwich: worst state exceeds the deterministic bound");
    return {stats.min_value, upper, stats.argmin};
}

}  // namespace subnyq
