#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace subnyq {

using u128 = unsigned __int128;

/// Exact C(n, k), or nullopt when the value does not fit in 128 bits.
/// Intermediate products are checked, so this succeeds for every n <= 100.
inline std::optional<u128> binomial_exact(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return u128{0};
    if (k > n - k) k = n - k;
    u128 result = 1;
    constexpr u128 limit = ~u128{0};
    for (std::int64_t i = 0; i < k; ++i) {
        const auto factor = static_cast<u128>(n - i);
        if (result > limit / factor) return std::nullopt;
        // result * (n - i) is divisible by (i + 1): it equals C(n, i+1) * (i+1).
        result = result * factor / static_cast<u128>(i + 1);
    }
    return result;
}

/// C(n, k) as a double; exact integer path for n <= 64, log-gamma beyond.
inline double binomial_real(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 64) return static_cast<double>(*binomial_exact(n, k));
    return std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1));
}

/// C(n, k) clamped to the uint64 range; used only for enumeration sizing.
inline std::uint64_t binomial_saturating(std::int64_t n, std::int64_t k) {
    auto exact = binomial_exact(n, k);
    if (!exact || *exact > u128{UINT64_MAX}) return UINT64_MAX;
    return static_cast<std::uint64_t>(*exact);
}

// ---------------------------------------------------------------------------
// Colexicographic k-subsets of {0, ..., n-1}.
//
// rank(c) = sum_i C(c_i, i + 1) for c_0 < c_1 < ... < c_{k-1}.

inline std::uint64_t colex_rank(std::span<const int> subset) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) r += binomial_saturating(subset[i], std::int64_t(i) + 1);
    return r;
}

inline std::vector<int> colex_unrank(std::uint64_t rank, int n, int k) {
    std::vector<int> out(static_cast<std::size_t>(k));
    int upper = n;
    for (int i = k; i >= 1; --i) {
        // largest c < upper with C(c, i) <= rank
        int c = upper - 1;
        while (c >= i - 1 && binomial_saturating(c, i) > rank) --c;
        out[static_cast<std::size_t>(i - 1)] = c;
        rank -= binomial_saturating(c, i);
        upper = c;
    }
    return out;
}

/// Advance to the colex successor in place; false once the last subset is passed.
inline bool next_colex(std::span<int> c, int n) {
    const std::size_t k = c.size();
    for (std::size_t i = 0; i < k; ++i) {
        const int limit = (i + 1 < k) ? c[i + 1] : n;
        if (c[i] + 1 < limit) {
            ++c[i];
            for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<int>(j);
            return true;
        }
    }
    return false;
}

/// Colex order on equal-length subsets: compare from the largest element down.
inline bool colex_less(std::span<const int> a, std::span<const int> b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

/// Floyd's algorithm: a uniformly random k-subset of {0..n-1}, returned sorted.
template <class Rng>
std::vector<int> floyd_subset(int n, int k, Rng& rng) {
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(k));
    for (int j = n - k; j < n; ++j) {
        const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
        bool present = false;
        for (int v : chosen) present = present || v == t;
        chosen.push_back(present ? j : t);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

inline std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + int(v % 10)));
        v /= 10;
    }
    return s;
}

}  // namespace subnyq
