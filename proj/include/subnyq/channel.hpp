#pragma once

// Compound multiband Gaussian channel: n equal subbands of width W/n, of which
// k are active in any state. Gains are magnitude samples |H(f)| on a q-point
// midpoint grid inside each subband; noise PSD is 1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace subnyq {

/// Sorted set of k active subbands. Indices are 0-based; text output is 1-based.
class ChannelState {
public:
    ChannelState() = default;

    explicit ChannelState(std::vector<int> indices) : indices_(std::move(indices)) {
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            detail::require<argument_error>(indices_[i] >= 0, "state index must be nonnegative");
            if (i > 0) detail::require<argument_error>(indices_[i - 1] < indices_[i], "state indices must be strictly increasing");
        }
    }

    /// Build from 1-based indices as written in files and on the command line.
    static ChannelState from_one_based(std::span<const int> one_based) {
        std::vector<int> v(one_based.begin(), one_based.end());
        for (int& x : v) x -= 1;
        return ChannelState(std::move(v));
    }

    std::span<const int> indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    int operator[](std::size_t i) const { return indices_[i]; }

    bool contains(int band) const { return std::binary_search(indices_.begin(), indices_.end(), band); }

    void validate_for(int n, int k) const {
        detail::require<argument_error>(static_cast<int>(indices_.size()) == k, "state size differs from k");
        detail::require<argument_error>(indices_.empty() || indices_.back() < n, "state index out of range");
    }

    /// "{1,3,4}" with 1-based indices.
    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(indices_[i] + 1);
        }
        return s + "}";
    }

    friend bool operator==(const ChannelState&, const ChannelState&) = default;

    /// Colexicographic order.
    friend bool operator<(const ChannelState& a, const ChannelState& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return colex_less(a.indices_, b.indices_);
    }

private:
    std::vector<int> indices_;
};

/// n x q table of gain magnitudes; row = subband, column = grid point.
using GainGrid = std::vector<std::vector<double>>;

class CompoundChannel {
public:
    CompoundChannel(double bandwidth, int n_subbands, int k_active, double power, GainGrid gains,
                    std::map<ChannelState, GainGrid> state_gains = {})
        : bandwidth_(bandwidth), n_(n_subbands), k_(k_active), power_(power), gains_(std::move(gains)),
          state_gains_(std::move(state_gains)) {
        detail::require<argument_error>(bandwidth_ > 0.0 && std::isfinite(bandwidth_), "bandwidth must be positive");
        detail::require<argument_error>(n_ >= 2, "need at least two subbands");
        detail::require<argument_error>(k_ >= 1 && k_ < n_, "need 1 <= k < n");
        detail::require<argument_error>(power_ >= 0.0 && std::isfinite(power_), "power must be nonnegative");
        q_ = check_grid(gains_);
        for (const auto& [state, grid] : state_gains_) {
            state.validate_for(n_, k_);
            detail::require<argument_error>(check_grid(grid) == q_, "per-state gain grid must share q");
        }
    }

    /// Flat gain |H| = gain everywhere, single grid point per subband.
    static CompoundChannel flat(double bandwidth, int n, int k, double power, double gain = 1.0, int q = 1) {
        return CompoundChannel(bandwidth, n, k, power,
                               GainGrid(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(q), gain)));
    }

    double bandwidth() const { return bandwidth_; }
    int n_subbands() const { return n_; }
    int k_active() const { return k_; }
    double power() const { return power_; }
    int grid_points() const { return q_; }
    double beta() const { return double(k_) / double(n_); }
    double subband_width() const { return bandwidth_ / n_; }
    /// Quadrature weight of one grid cell.
    double cell_width() const { return bandwidth_ / (double(n_) * q_); }
    /// Equal-power SNR scale P / (beta W).
    double snr_scale() const { return power_ / (beta() * bandwidth_); }

    const GainGrid& gains() const { return gains_; }
    const std::map<ChannelState, GainGrid>& state_gains() const { return state_gains_; }

    /// Gain grid in effect at `state`.
    const GainGrid& gains_for(const ChannelState& state) const {
        auto it = state_gains_.find(state);
        return it == state_gains_.end() ? gains_ : it->second;
    }

    /// |H_s| at grid point j for the i-th active subband of `state`.
    double active_gain(const ChannelState& state, std::size_t i, int j) const {
        return gains_for(state)[static_cast<std::size_t>(state[i])][static_cast<std::size_t>(j)];
    }

private:
    int check_grid(const GainGrid& g) const {
        detail::require<argument_error>(static_cast<int>(g.size()) == n_, "gain grid needs one row per subband");
        const std::size_t q = g.front().size();
        detail::require<argument_error>(q >= 1, "gain grid needs at least one point per subband");
        for (const auto& row : g) {
            detail::require<argument_error>(row.size() == q, "all subbands must share the grid resolution");
            for (double v : row) detail::require<argument_error>(std::isfinite(v) && v >= 0.0, "gains must be finite and nonnegative");
        }
        return static_cast<int>(q);
    }

    double bandwidth_;
    int n_;
    int k_;
    double power_;
    int q_ = 1;
    GainGrid gains_;
    std::map<ChannelState, GainGrid> state_gains_;
};

struct SnrSummary {
    double snr_min;
    double snr_max;
    /// Average-to-minimum gain ratio A-bar: the smaller of
    /// max_s int |H(f,s)|^2 df / (beta W min|H|^2) and max|H|^2 / min|H|^2.
    double a_bar;
};

/// SNR extremes over all states. Zero gains are rejected here rather than at
/// construction so that degenerate channels can still be described.
inline SnrSummary snr_summary(const CompoundChannel& ch) {
    double g2min = std::numeric_limits<double>::infinity();
    double g2max = 0.0;
    auto scan = [&](const GainGrid& grid, std::span<const int> bands) {
        for (int b : bands)
            for (double g : grid[static_cast<std::size_t>(b)]) {
                g2min = std::min(g2min, g * g);
                g2max = std::max(g2max, g * g);
            }
    };
    std::vector<int> all(static_cast<std::size_t>(ch.n_subbands()));
    std::iota(all.begin(), all.end(), 0);
    scan(ch.gains(), all);
    for (const auto& [state, grid] : ch.state_gains()) scan(grid, state.indices());
    if (!(g2min > 0.0)) throw domain_error("snr_summary: channel has a zero gain");
    if (!(ch.power() > 0.0)) throw domain_error("snr_summary: power must be positive");

    const double cell = ch.cell_width();
    auto band_energy = [&](const GainGrid& grid, int b) {
        double e = 0.0;
        for (double g : grid[static_cast<std::size_t>(b)]) e += g * g * cell;
        return e;
    };
    // Heaviest support under the default grid: the k most energetic subbands.
    std::vector<double> energies;
    for (int b = 0; b < ch.n_subbands(); ++b) energies.push_back(band_energy(ch.gains(), b));
    std::sort(energies.begin(), energies.end(), std::greater<>());
    double max_energy = std::accumulate(energies.begin(), energies.begin() + ch.k_active(), 0.0);
    for (const auto& [state, grid] : ch.state_gains()) {
        double e = 0.0;
        for (int b : state.indices()) e += band_energy(grid, b);
        max_energy = std::max(max_energy, e);
    }
    const double bw = ch.beta() * ch.bandwidth();
    const double form_avg = max_energy / (bw * g2min);
    const double form_peak = g2max / g2min;
    return {ch.snr_scale() * g2min, ch.snr_scale() * g2max, std::min(form_avg, form_peak)};
}

// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kEnumerationSeed = 0x5eed0fc0113c7ULL;

struct StateSet {
    std::vector<ChannelState> states;
    /// True when the states are a pseudo-random sample rather than all of C(n, k).
    bool sampled = false;
};

/// All k-subsets of n in colex order when C(n,k) <= cap; otherwise `cap`
/// distinct Floyd-sampled subsets from a fixed stream, sorted colex.
inline StateSet enumerate_states(int n, int k, std::uint64_t cap) {
    detail::require<argument_error>(n >= 2 && k >= 1 && k < n, "enumerate_states: need 1 <= k < n");
    detail::require<argument_error>(cap >= 1, "enumerate_states: cap must be positive");
    StateSet out;
    const std::uint64_t total = binomial_saturating(n, k);
    if (total <= cap) {
        out.states.reserve(total);
        std::vector<int> c(static_cast<std::size_t>(k));
        std::iota(c.begin(), c.end(), 0);
        do {
            out.states.emplace_back(c);
        } while (next_colex(c, n));
        return out;
    }
    out.sampled = true;
    Xoshiro256 rng(kEnumerationSeed);
    std::set<ChannelState> chosen;
    while (chosen.size() < cap) chosen.insert(ChannelState(floyd_subset(n, k, rng)));
    out.states.assign(chosen.begin(), chosen.end());
    return out;
}

}  // namespace subnyq
