#pragma once

// Capacities of the compound multiband channel (nats/s) with midpoint
// quadrature over each subband's q-point grid, and of the discrete-time
// sparse vector channel (nats per channel use).
//
//   C_eq      = int (1/2) log det(I_k + snr H_s^2) df
//   C_sampled = int (1/2) log det(I_m + snr Qw_s H_s^2 Qw_s^T) df
//   C_opt     = int (1/2) sum_i log+(nu H_ii^2) df
//
// with snr = P/(beta W) and Qw the row-whitened sampler.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "samplers.hpp"

namespace subnyq {

inline constexpr double kWaterfillTol = 1e-12;
inline constexpr int kWaterfillMaxIter = 200;

struct LossReport {
    ChannelState state;
    double c_sampled = 0.0;
    double c_nyquist_eq = 0.0;
    double c_nyquist_opt = 0.0;
    double loss_eq = 0.0;   ///< c_nyquist_eq - c_sampled
    double loss_opt = 0.0;  ///< c_nyquist_opt - c_sampled
    double water_level = 0.0;
};

namespace detail {

/// (1/2) log det(I + D^{1/2} G D^{1/2}) with G = Qw_s^T Qw_s and D = diag(d).
inline double half_logdet_sampled(const RealMatrix& qw_s, std::span<const double> d) {
    RealMatrix g = qw_s.transpose() * qw_s;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) *= std::sqrt(d[std::size_t(i)] * d[std::size_t(j)]);
    g = 0.5 * (g + g.transpose()).eval();
    return 0.5 * logdet_shifted(g, 1.0);
}

/// Total power sum_c weight * (nu - t_c)^+ over cells with inverse gains t.
inline double poured_power(std::span<const double> inv_gain2, double weight, double nu) {
    double p = 0.0;
    for (double t : inv_gain2) p += std::max(0.0, nu - t);
    return p * weight;
}

/// Water level for cells of equal quadrature weight. Bisection on the
/// nondecreasing poured power, then an exact solve on the final active set.
inline double waterfill(std::span<const double> inv_gain2, double weight, double power, double tol) {
    detail::require<argument_error>(tol > 0.0, "waterfill: tol must be positive");
    detail::require<argument_error>(weight > 0.0 && power >= 0.0, "waterfill: invalid weight or power");
    double t_min = std::numeric_limits<double>::infinity();
    for (double t : inv_gain2) t_min = std::min(t_min, t);
    if (!std::isfinite(t_min)) throw domain_error("waterfill: every active gain is zero");
    if (power == 0.0) return t_min;

    double lo = t_min;
    double hi = t_min + power / weight;
    double nu = hi;
    bool converged = false;
    for (int it = 0; it < kWaterfillMaxIter; ++it) {
        nu = 0.5 * (lo + hi);
        const double p = poured_power(inv_gain2, weight, nu);
        if (std::abs(p - power) <= tol * power) {
            converged = true;
            break;
        }
        (p > power ? hi : lo) = nu;
    }
    // Exact level on the active set implied by the bisection result.
    double active_sum = 0.0;
    std::size_t active = 0;
    for (double t : inv_gain2)
        if (t < nu) {
            active_sum += t;
            ++active;
        }
    if (active > 0) {
        const double exact = (power / weight + active_sum) / double(active);
        if (std::abs(poured_power(inv_gain2, weight, exact) - power) <
            std::abs(poured_power(inv_gain2, weight, nu) - power))
            nu = exact;
    }
    if (!converged && std::abs(poured_power(inv_gain2, weight, nu) - power) > tol * power)
        throw numerical_error("waterfill: bisection did not converge");
    return nu;
}

inline void check_state(const CompoundChannel& ch, const ChannelState& s) { s.validate_for(ch.n_subbands(), ch.k_active()); }

inline std::vector<double> active_inverse_gains(const CompoundChannel& ch, const ChannelState& s) {
    std::vector<double> t;
    t.reserve(s.size() * std::size_t(ch.grid_points()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (int j = 0; j < ch.grid_points(); ++j) {
            const double g = ch.active_gain(s, i, j);
            t.push_back(g > 0.0 ? 1.0 / (g * g) : std::numeric_limits<double>::infinity());
        }
    return t;
}

}  // namespace detail

inline double sampled_capacity(const CompoundChannel& ch, const SamplerSpec& sampler, const ChannelState& state) {
    detail::check_state(ch, state);
    detail::require<argument_error>(sampler.cols() == ch.n_subbands(), "sampler column count must equal n");
    const double snr = ch.snr_scale();
    const int q = ch.grid_points();
    std::vector<double> d(state.size());
    double acc = 0.0;
    std::size_t cached_panel = sampler.panels();
    RealMatrix qw_s;
    for (int j = 0; j < q; ++j) {
        const std::size_t p = sampler.panel_for(j, q);
        if (p != cached_panel) {
            qw_s = select_columns(sampler.whitened(p), state.indices());
            cached_panel = p;
        }
        for (std::size_t i = 0; i < state.size(); ++i) {
            const double g = ch.active_gain(state, i, j);
            d[i] = snr * g * g;
        }
        acc += detail::half_logdet_sampled(qw_s, d);
    }
    return acc * ch.cell_width();
}

inline double nyquist_capacity_equal(const CompoundChannel& ch, const ChannelState& state) {
    detail::check_state(ch, state);
    const double snr = ch.snr_scale();
    double acc = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i)
        for (int j = 0; j < ch.grid_points(); ++j) {
            const double g = ch.active_gain(state, i, j);
            acc += 0.5 * std::log1p(snr * g * g);
        }
    return acc * ch.cell_width();
}

/// Water level nu with int sum_i (nu - 1/H_ii^2)^+ df = P to within tol * P.
inline double waterfill_level(const CompoundChannel& ch, const ChannelState& state, double tol = kWaterfillTol) {
    detail::check_state(ch, state);
    const auto t = detail::active_inverse_gains(ch, state);
    return detail::waterfill(t, ch.cell_width(), ch.power(), tol);
}

/// Power poured at level nu; used to check water-filling residuals.
inline double waterfill_power(const CompoundChannel& ch, const ChannelState& state, double nu) {
    const auto t = detail::active_inverse_gains(ch, state);
    return detail::poured_power(t, ch.cell_width(), nu);
}

inline double nyquist_capacity_waterfill(const CompoundChannel& ch, const ChannelState& state, double nu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i)
        for (int j = 0; j < ch.grid_points(); ++j) {
            const double g = ch.active_gain(state, i, j);
            const double x = nu * g * g;
            if (x > 1.0) acc += 0.5 * std::log(x);
        }
    return acc * ch.cell_width();
}

inline double nyquist_capacity_waterfill(const CompoundChannel& ch, const ChannelState& state) {
    return nyquist_capacity_waterfill(ch, state, waterfill_level(ch, state));
}

/// Upper bound W beta (A-bar - 1) / (1 + SNR_min) on C_opt - C_eq.
inline double waterfill_gap_bound(const CompoundChannel& ch, const ChannelState& state) {
    detail::check_state(ch, state);
    const auto snr = snr_summary(ch);
    return ch.bandwidth() * ch.beta() * (snr.a_bar - 1.0) / (1.0 + snr.snr_min);
}

inline LossReport capacity_loss(const CompoundChannel& ch, const SamplerSpec& sampler, const ChannelState& state) {
    LossReport r;
    r.state = state;
    r.c_sampled = sampled_capacity(ch, sampler, state);
    r.c_nyquist_eq = nyquist_capacity_equal(ch, state);
    r.water_level = waterfill_level(ch, state);
    r.c_nyquist_opt = nyquist_capacity_waterfill(ch, state, r.water_level);
    r.loss_eq = r.c_nyquist_eq - r.c_sampled;
    r.loss_opt = r.c_nyquist_opt - r.c_sampled;
    return r;
}

struct WorstCase {
    double max_loss = 0.0;
    ChannelState argmax_state;
    std::vector<LossReport> per_state;
};

/// Maximum equal-power loss over `states`; ties go to the colex-smallest state.
inline WorstCase worst_case_loss(const CompoundChannel& ch, const SamplerSpec& sampler,
                                 std::span<const ChannelState> states, unsigned workers = 1) {
    detail::require<argument_error>(!states.empty(), "worst_case_loss: no states");
    WorstCase out;
    out.per_state.resize(states.size());
    parallel_for(states.size(), workers, [&](std::size_t i) { out.per_state[i] = capacity_loss(ch, sampler, states[i]); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < states.size(); ++i) {
        const auto& a = out.per_state[i];
        const auto& b = out.per_state[best];
        if (a.loss_eq > b.loss_eq || (a.loss_eq == b.loss_eq && a.state < b.state)) best = i;
    }
    out.max_loss = out.per_state[best].loss_eq;
    out.argmax_state = out.per_state[best].state;
    return out;
}

/// Discrete-time sparse vector channel y = Q H x + noise with x supported on
/// `state` and power P/k per active coordinate. Capacities in nats per use.
inline LossReport discrete_loss(std::span<const double> gains_diag, const RealMatrix& q, const ChannelState& state,
                                double power) {
    const int n = static_cast<int>(gains_diag.size());
    detail::require<argument_error>(q.cols() == n, "discrete_loss: Q must have one column per coordinate");
    detail::require<argument_error>(state.size() >= 1 && state.indices().back() < n, "discrete_loss: state out of range");
    detail::require<argument_error>(power >= 0.0, "discrete_loss: power must be nonnegative");
    for (double g : gains_diag) detail::require<domain_error>(g > 0.0 && std::isfinite(g), "discrete_loss: gains must be positive");

    const auto k = state.size();
    const double per_coord = power / double(k);
    std::vector<double> d(k), t(k);
    LossReport r;
    r.state = state;
    for (std::size_t i = 0; i < k; ++i) {
        const double g = gains_diag[std::size_t(state[i])];
        d[i] = per_coord * g * g;
        t[i] = 1.0 / (g * g);
        r.c_nyquist_eq += 0.5 * std::log1p(d[i]);
    }
    const RealMatrix qw_s = select_columns(whiten(q), state.indices());
    r.c_sampled = detail::half_logdet_sampled(qw_s, d);
    r.water_level = detail::waterfill(t, 1.0, power, kWaterfillTol);
    for (std::size_t i = 0; i < k; ++i) {
        const double x = r.water_level / t[i];
        if (x > 1.0) r.c_nyquist_opt += 0.5 * std::log(x);
    }
    r.loss_eq = r.c_nyquist_eq - r.c_sampled;
    r.loss_opt = r.c_nyquist_opt - r.c_sampled;
    return r;
}

}  // namespace subnyq
