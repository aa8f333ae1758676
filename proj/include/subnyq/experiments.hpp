#pragma once

// Seeded Monte Carlo suites for the random-sampling achievability results and
// the log-determinant concentration lemmas. Trial t draws from the stream
// seeded by trial_seed(master_seed, t), so results do not depend on the
// number of workers.
//
// Two kinds of checks appear here. Deterministic bounds (the worst-state
// bound from the converse) must hold in every trial; a violation is a bug.
// Asymptotic statements are checked as brackets with explicit tolerances
// and failure budgets carried in TrialConfig.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capacity.hpp"
#include "channel.hpp"
#include "converse.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "samplers.hpp"

namespace subnyq {

struct TrialConfig {
    int n = 16;
    int k = 4;
    int m = 4;
    EnsembleKind ensemble = EnsembleKind::gaussian;
    double eps = 0.05;
    int trials = 50;
    std::uint64_t master_seed = 1;
    std::uint64_t state_cap = kSubsetCap;
    double tau = 0.02;
    /// Half-width or one-sided slack of the bracket check.
    double tolerance = 0.15;
    /// Trials allowed to miss a high-probability event.
    int violation_budget = 0;
    /// Second dimension for two-point trend checks; 0 disables.
    int k_compare = 0;
    unsigned workers = 1;

    double alpha() const { return double(m) / n; }
    double beta() const { return double(k) / n; }
};

struct TrialStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

struct ExperimentResult {
    std::string name;
    TrialConfig config;
    std::vector<TrialStats> per_trial;
    double statistic = 0.0;  ///< aggregate compared against the bracket
    double reference = std::numeric_limits<double>::quiet_NaN();
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    double deterministic_bound = std::numeric_limits<double>::quiet_NaN();
    int violations = 0;  ///< deterministic-bound violations or missed events
    int violation_budget = 0;
    bool report_only = false;  ///< no pass/fail attached to the bracket
    bool passed = false;
    std::vector<std::pair<std::string, double>> extra;
    double wall_seconds = 0.0;  ///< excluded from serialised output

    void set_extra(const std::string& key, double v) { extra.emplace_back(key, v); }
    std::optional<double> get_extra(const std::string& key) const {
        for (const auto& [k, v] : extra)
            if (k == key) return v;
        return std::nullopt;
    }
};

namespace detail {

inline void validate_trial_config(const TrialConfig& c) {
    require<argument_error>(c.trials >= 1, "trials must be >= 1");
    require<argument_error>(c.eps >= 0.0, "eps must be nonnegative");
    require<argument_error>(c.n >= 2 && c.k >= 1 && c.k <= c.m && c.m <= c.n, "need 1 <= k <= m <= n");
    require<argument_error>(c.state_cap >= 1, "state_cap must be positive");
}

inline double mean_of(const std::vector<double>& v) {
    KahanSum s;
    for (double x : v) s.add(x);
    return s.value() / double(v.size());
}

inline double stddev_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean_of(v);
    KahanSum s;
    for (double x : v) s.add((x - mu) * (x - mu));
    return std::sqrt(s.value() / double(v.size() - 1));
}

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

template <class T, class Fn>
std::vector<T> run_trials(int trials, unsigned workers, Fn&& fn) {
    std::vector<T> out(static_cast<std::size_t>(trials));
    parallel_for(out.size(), workers, [&](std::size_t t) { out[t] = fn(t); });
    return out;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Whitened m x n draw; one resample on a rank-deficient draw, then error.
inline RealMatrix whitened_draw(EnsembleKind kind, int m, int n, std::uint64_t seed, bool& resampled) {
    resampled = false;
    try {
        return whiten(draw_matrix({kind, m, n, seed}));
    } catch (const singularity_error&) {
        resampled = true;
    }
    return whiten(draw_matrix({kind, m, n, resample_seed(seed)}));
}

struct WorstStateTrial {
    TrialStats stats;
    bool resampled = false;
};

/// Per-trial min/max/mean over states of (1/n) log det(eps I + B_s^T B_s), B = whiten(M).
inline ExperimentResult worst_state_experiment(const std::string& name, const TrialConfig& cfg) {
    Stopwatch clock;
    ExperimentResult r;
    r.name = name;
    r.config = cfg;
    detail::require<size_error>(binomial_saturating(cfg.n, cfg.k) <= cfg.state_cap,
                                "achievability trials need exhaustive state enumeration");
    const auto trials = run_trials<WorstStateTrial>(cfg.trials, cfg.workers, [&](std::size_t t) {
        WorstStateTrial out;
        const RealMatrix b = whitened_draw(cfg.ensemble, cfg.m, cfg.n, trial_seed(cfg.master_seed, t), out.resampled);
        const auto s = state_logdet_stats(b, cfg.k, cfg.eps, cfg.state_cap, 1);
        out.stats = {s.min_value, s.max_value, s.mean_value};
        return out;
    });
    r.deterministic_bound = min_state_logdet_bound(cfg.n, cfg.k, cfg.m, cfg.eps).exact_form;
    std::vector<double> mins;
    int resampled = 0;
    for (const auto& t : trials) {
        r.per_trial.push_back(t.stats);
        mins.push_back(t.stats.min);
        if (t.stats.min > r.deterministic_bound + 1e-12) ++r.violations;
        resampled += t.resampled;
    }
    r.statistic = mean_of(mins);
    r.set_extra("std_of_min", stddev_of(mins));
    r.set_extra("max_of_min", *std::max_element(mins.begin(), mins.end()));
    r.set_extra("resampled_trials", resampled);
    r.wall_seconds = clock.seconds();
    return r;
}

inline void finish_bracket(ExperimentResult& r) {
    const bool in_bracket = r.statistic >= r.lower && r.statistic <= r.upper;
    r.passed = r.violations <= r.violation_budget && (r.report_only || in_bracket);
}

}  // namespace detail

/// Landau-rate sampling (k = m): worst-state statistic against -H(beta).
inline ExperimentResult landau_achievability_trial(const TrialConfig& cfg) {
    detail::validate_trial_config(cfg);
    detail::require<argument_error>(cfg.k == cfg.m, "landau trial needs k == m");
    auto r = detail::worst_state_experiment("landau_achievability", cfg);
    r.reference = -binary_entropy(cfg.beta());
    r.lower = r.reference - cfg.tolerance;
    r.upper = r.reference + cfg.tolerance;
    r.violation_budget = 0;
    detail::finish_bracket(r);
    return r;
}

/// Super-Landau sampling (k < m): worst-state statistic against
/// -H(beta) + alpha H(beta/alpha). The bracket is asserted only for gaussian
/// draws inside the regime alpha - beta >= 0.05, 1 - alpha - beta >= 0.05;
/// the deterministic bound is asserted always.
inline ExperimentResult superlandau_achievability_trial(const TrialConfig& cfg) {
    detail::validate_trial_config(cfg);
    detail::require<argument_error>(cfg.k < cfg.m, "super-Landau trial needs k < m");
    constexpr double margin = 0.05;
    const double a = cfg.alpha(), b = cfg.beta();
    const bool in_regime = a - b >= margin - 1e-12 && 1.0 - a - b >= margin - 1e-12;
    auto r = detail::worst_state_experiment("superlandau_achievability", cfg);
    r.reference = -binary_entropy(b) + a * binary_entropy(std::min(1.0, b / a));
    r.lower = r.reference - cfg.tolerance;
    r.upper = r.reference + cfg.tolerance;
    r.report_only = !in_regime || cfg.ensemble != EnsembleKind::gaussian;
    r.set_extra("in_regime", in_regime ? 1.0 : 0.0);
    detail::finish_bracket(r);
    return r;
}

/// (1/k) log det(eps I + A A^T / k) for square k x k draws. The bracket is
/// [-1 + log k/(2k) - 2/(k eps), -1 + 1.5 log(ek)/k + 2 sqrt(eps) log(1/eps)]
/// widened by 3 standard errors. With k_compare set, also requires the
/// spread to be smaller at the larger dimension.
inline ExperimentResult logdet_concentration_trial(const TrialConfig& cfg) {
    detail::require<argument_error>(cfg.trials >= 2, "concentration needs at least two trials");
    detail::require<argument_error>(cfg.k >= 1, "concentration needs k >= 1");
    detail::require<argument_error>(cfg.eps > 0.0 && cfg.eps <= 0.8, "concentration needs eps in (0, 0.8]");
    detail::Stopwatch clock;
    auto sample = [&](int k) {
        return detail::run_trials<double>(cfg.trials, cfg.workers, [&](std::size_t t) {
            const RealMatrix a = draw_matrix({cfg.ensemble, k, k, trial_seed(cfg.master_seed, t)});
            RealMatrix g = a * a.transpose() / double(k);
            g = 0.5 * (g + g.transpose()).eval();
            return logdet_shifted(g, cfg.eps) / double(k);
        });
    };
    ExperimentResult r;
    r.name = "logdet_concentration";
    r.config = cfg;
    const auto values = sample(cfg.k);
    for (double v : values) r.per_trial.push_back({v, v, v});
    const double k = cfg.k;
    r.statistic = detail::mean_of(values);
    const double sd = detail::stddev_of(values);
    const double slack = 3.0 * sd / std::sqrt(double(cfg.trials));
    r.reference = -1.0;
    r.lower = -1.0 + std::log(k) / (2.0 * k) - 2.0 / (k * cfg.eps) - slack;
    r.upper = -1.0 + 1.5 * std::log(std::exp(1.0) * k) / k + 2.0 * std::sqrt(cfg.eps) * std::log(1.0 / cfg.eps) + slack;
    r.set_extra("std", sd);
    r.set_extra("slack", slack);
    if (cfg.k_compare > 0 && cfg.k_compare != cfg.k) {
        const double sd_cmp = detail::stddev_of(sample(cfg.k_compare));
        r.set_extra("k_compare", cfg.k_compare);
        r.set_extra("std_compare", sd_cmp);
        const bool shrinks = cfg.k_compare > cfg.k ? sd_cmp < sd : sd < sd_cmp;
        r.set_extra("spread_shrinks", shrinks ? 1.0 : 0.0);
        if (!shrinks) ++r.violations;
    }
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

/// Monte Carlo E[det(A A^T)] / k! for k x k Gaussian A.
inline ExperimentResult wishart_det_report(int k, int trials, std::uint64_t seed, unsigned workers = 1) {
    detail::require<argument_error>(k >= 1 && k <= 6, "wishart_det_expectation needs 1 <= k <= 6");
    detail::require<argument_error>(trials >= 2, "wishart_det_expectation needs trials >= 2");
    detail::Stopwatch clock;
    const auto dets = detail::run_trials<double>(trials, workers, [&](std::size_t t) {
        const RealMatrix a = draw_matrix({EnsembleKind::gaussian, k, k, trial_seed(seed, t)});
        const double d = a.determinant();
        return d * d;
    });
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    ExperimentResult r;
    r.name = "wishart_det";
    r.config.k = k;
    r.config.trials = trials;
    r.config.master_seed = seed;
    r.config.workers = workers;
    r.statistic = detail::mean_of(dets) / factorial;
    r.reference = 1.0;
    r.set_extra("std_error", detail::stddev_of(dets) / factorial / std::sqrt(double(trials)));
    r.report_only = true;
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

inline double wishart_det_expectation(int k, int trials, std::uint64_t seed, unsigned workers = 1) {
    return wishart_det_report(k, trials, seed, workers).statistic;
}

/// Fraction of trials with |(1/n) log det(A A^T / n) - limit(alpha)| <= 1/sqrt(n).
inline ExperimentResult rect_logdet_trial(const TrialConfig& cfg) {
    detail::validate_trial_config({cfg.n, 1, cfg.m, cfg.ensemble, 0.0, cfg.trials, 0, 1});
    const double alpha = cfg.alpha();
    detail::require<argument_error>(alpha >= 0.1 - 1e-12 && alpha <= 0.9 + 1e-12, "rect_logdet_trial needs alpha in [0.1, 0.9]");
    detail::Stopwatch clock;
    const double limit = rect_logdet_limit(alpha);
    const auto dev = detail::run_trials<double>(cfg.trials, cfg.workers, [&](std::size_t t) {
        const RealMatrix a = draw_matrix({cfg.ensemble, cfg.m, cfg.n, trial_seed(cfg.master_seed, t)});
        RealMatrix g = a * a.transpose() / double(cfg.n);
        g = 0.5 * (g + g.transpose()).eval();
        return logdet_shifted(g, 0.0) / double(cfg.n) - limit;
    });
    ExperimentResult r;
    r.name = "rect_logdet";
    r.config = cfg;
    const double radius = 1.0 / std::sqrt(double(cfg.n));
    std::vector<double> absdev;
    for (double d : dev) {
        r.per_trial.push_back({d, d, d});
        absdev.push_back(std::abs(d));
        if (std::abs(d) > radius) ++r.violations;
    }
    r.reference = limit;
    r.statistic = 1.0 - double(r.violations) / cfg.trials;
    r.lower = 1.0 - double(cfg.violation_budget) / cfg.trials;
    r.upper = 1.0;
    r.violation_budget = cfg.violation_budget;
    r.set_extra("radius", radius);
    r.set_extra("median_abs_deviation", detail::median_of(absdev));
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

/// Fraction of eigenvalues of (1/n) A A^T below eps, divided by n as in the
/// counting bound. Nonincreasing as eps decreases.
inline double small_eigenvalue_fraction(const RealVector& eigenvalues, double eps, int n) {
    const auto count = std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double v) { return v < eps; });
    return double(count) / n;
}

/// alpha eps / (1 - alpha - 1/n) + 4 sqrt(alpha tau) / sqrt(n eps).
inline double small_eigenvalue_bound(double alpha, double eps, double tau, int n) {
    return alpha / (1.0 - alpha - 1.0 / n) * eps + 4.0 * std::sqrt(alpha * tau) / std::sqrt(n * eps);
}

/// Violations of the small-eigenvalue counting bound over Gaussian draws.
/// The default budget is ceil(trials * 2 exp(-tau n)).
inline ExperimentResult small_eigenvalue_count_trial(const TrialConfig& cfg) {
    detail::validate_trial_config({cfg.n, 1, cfg.m, cfg.ensemble, cfg.eps, cfg.trials, 0, 1});
    detail::require<argument_error>(cfg.eps > 0.0 && cfg.tau > 0.0, "small_eigenvalue_count_trial needs eps, tau > 0");
    detail::require<argument_error>(cfg.ensemble == EnsembleKind::gaussian, "small_eigenvalue_count_trial is gaussian only");
    const double alpha = cfg.alpha();
    detail::require<argument_error>(alpha >= 0.1 - 1e-12 && alpha <= 0.9 + 1e-12, "small_eigenvalue_count_trial needs alpha in [0.1, 0.9]");
    detail::Stopwatch clock;
    const double bound = small_eigenvalue_bound(alpha, cfg.eps, cfg.tau, cfg.n);
    const auto frac = detail::run_trials<double>(cfg.trials, cfg.workers, [&](std::size_t t) {
        const RealMatrix a = draw_matrix({cfg.ensemble, cfg.m, cfg.n, trial_seed(cfg.master_seed, t)});
        RealMatrix g = a * a.transpose() / double(cfg.n);
        g = 0.5 * (g + g.transpose()).eval();
        return small_eigenvalue_fraction(symmetric_eigenvalues(g), cfg.eps, cfg.n);
    });
    ExperimentResult r;
    r.name = "small_eigenvalue_count";
    r.config = cfg;
    for (double f : frac) {
        r.per_trial.push_back({f, f, f});
        if (!(f < bound)) ++r.violations;
    }
    const double failure_prob = 2.0 * std::exp(-cfg.tau * cfg.n);
    r.violation_budget = std::max(cfg.violation_budget, static_cast<int>(std::ceil(cfg.trials * failure_prob - 1e-12)));
    r.statistic = *std::max_element(frac.begin(), frac.end());
    r.upper = bound;
    r.report_only = true;  // individual draws may exceed the bound within the budget
    r.set_extra("bound", bound);
    r.set_extra("failure_probability", failure_prob);
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

/// (1/n) log det(eps I_k + A^T B^{-1} A), A m x k Gaussian, B ~ Wishart_m(n-k, I),
/// against the closed-form limit; passes when the median is at least limit - tolerance.
inline ExperimentResult wishart_minor_trial(const TrialConfig& cfg) {
    detail::validate_trial_config(cfg);
    const double a = cfg.alpha(), b = cfg.beta();
    detail::require<argument_error>(a - b >= 0.1 - 1e-12 && 1.0 - a - b >= 0.1 - 1e-12,
                                    "wishart_minor_trial needs alpha - beta >= 0.1 and 1 - alpha - beta >= 0.1");
    detail::Stopwatch clock;
    const double limit = wishart_minor_limit(a, b);
    const auto values = detail::run_trials<double>(cfg.trials, cfg.workers, [&](std::size_t t) {
        Xoshiro256 rng(trial_seed(cfg.master_seed, t));
        const RealMatrix am = draw_from(EnsembleKind::gaussian, cfg.m, cfg.k, rng);
        for (int attempt = 0;; ++attempt) {
            const RealMatrix g = draw_from(EnsembleKind::gaussian, cfg.m, cfg.n - cfg.k, rng);
            const RealMatrix wish = g * g.transpose();
            Eigen::LLT<RealMatrix> llt(wish);
            if (llt.info() == Eigen::Success) {
                RealMatrix s = am.transpose() * llt.solve(am);
                s = 0.5 * (s + s.transpose()).eval();
                return logdet_shifted(s, cfg.eps) / double(cfg.n);
            }
            if (attempt > 0) throw singularity_error("wishart_minor_trial: singular Wishart draw");
        }
    });
    ExperimentResult r;
    r.name = "wishart_minor";
    r.config = cfg;
    for (double v : values) r.per_trial.push_back({v, v, v});
    r.reference = limit;
    r.statistic = detail::median_of(values);
    r.lower = limit - cfg.tolerance;
    r.set_extra("mean", detail::mean_of(values));
    r.set_extra("std", detail::stddev_of(values));
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

/// Monte Carlo E[tr(W^{-1})] (n - m - 1) / m for W ~ Wishart_m(n, I).
inline ExperimentResult inverse_wishart_report(int m, int n, int trials, std::uint64_t seed, unsigned workers = 1) {
    detail::require<argument_error>(m >= 1 && n >= m + 2, "inverse_wishart_trace needs n >= m + 2");
    detail::require<argument_error>(trials >= 2, "inverse_wishart_trace needs trials >= 2");
    detail::Stopwatch clock;
    const auto traces = detail::run_trials<double>(trials, workers, [&](std::size_t t) {
        const RealMatrix g = draw_matrix({EnsembleKind::gaussian, m, n, trial_seed(seed, t)});
        const RealMatrix w = g * g.transpose();
        Eigen::LLT<RealMatrix> llt(w);
        if (llt.info() != Eigen::Success) throw singularity_error("inverse_wishart_trace: singular draw");
        return llt.solve(RealMatrix::Identity(m, m)).trace();
    });
    const double scale = double(n - m - 1) / m;
    ExperimentResult r;
    r.name = "inverse_wishart_trace";
    r.config.m = m;
    r.config.n = n;
    r.config.trials = trials;
    r.config.master_seed = seed;
    r.config.workers = workers;
    r.statistic = detail::mean_of(traces) * scale;
    r.reference = 1.0;
    r.set_extra("std_error", detail::stddev_of(traces) * scale / std::sqrt(double(trials)));
    r.report_only = true;
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

inline double inverse_wishart_trace_trial(int m, int n, int trials, std::uint64_t seed, unsigned workers = 1) {
    return inverse_wishart_report(m, n, trials, seed, workers).statistic;
}

// ---------------------------------------------------------------------------
// Uniformity of the loss across states

/// (max - min) / mean of per-state equal-power losses; zero when all equal.
inline double loss_spread(const std::vector<double>& losses) {
    const auto [lo, hi] = std::minmax_element(losses.begin(), losses.end());
    if (*hi - *lo <= 0.0) return 0.0;
    return (*hi - *lo) / detail::mean_of(losses);
}

inline constexpr int kHistogramBins = 10;

/// Per-state loss distribution for one sampler. The statistic is the spread.
inline ExperimentResult loss_uniformity_report(const CompoundChannel& ch, const SamplerSpec& sampler,
                                               const TrialConfig& cfg) {
    detail::Stopwatch clock;
    const auto set = enumerate_states(ch.n_subbands(), ch.k_active(), cfg.state_cap);
    detail::require<size_error>(!set.sampled, "loss_uniformity_report needs full state enumeration");
    std::vector<double> losses(set.states.size());
    parallel_for(losses.size(), cfg.workers, [&](std::size_t i) {
        losses[i] = nyquist_capacity_equal(ch, set.states[i]) - sampled_capacity(ch, sampler, set.states[i]);
    });
    ExperimentResult r;
    r.name = "loss_uniformity";
    r.config = cfg;
    const auto [lo, hi] = std::minmax_element(losses.begin(), losses.end());
    const double mean = detail::mean_of(losses);
    r.per_trial.push_back({*lo, *hi, mean});
    r.statistic = loss_spread(losses);
    r.set_extra("states", double(losses.size()));
    const double width = (*hi - *lo) / kHistogramBins;
    std::vector<int> bins(kHistogramBins, 0);
    for (double v : losses) {
        int b = width > 0.0 ? static_cast<int>((v - *lo) / width) : 0;
        ++bins[static_cast<std::size_t>(std::clamp(b, 0, kHistogramBins - 1))];
    }
    for (int b = 0; b < kHistogramBins; ++b) r.set_extra("bin_" + std::to_string(b), bins[std::size_t(b)]);
    r.report_only = true;
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

/// Same, with an m x n sampler drawn from cfg.ensemble using cfg.master_seed.
inline ExperimentResult loss_uniformity_report(const CompoundChannel& ch, const TrialConfig& cfg) {
    detail::require<argument_error>(cfg.n == ch.n_subbands() && cfg.k == ch.k_active(), "config and channel disagree on n, k");
    detail::require<argument_error>(cfg.m >= 1 && cfg.m <= cfg.n, "need 1 <= m <= n");
    const auto sampler = make_random_sampler({cfg.ensemble, cfg.m, cfg.n, cfg.master_seed});
    return loss_uniformity_report(ch, sampler, cfg);
}

/// Fraction of seeds for which the loss spread at (large) is below that at
/// (small). Flat unit gains, equal-power SNR `snr`, W = n, k = m.
inline ExperimentResult uniformity_trend(int n_small, int k_small, int n_large, int k_large, double snr, int seeds,
                                         std::uint64_t first_seed, unsigned workers = 1) {
    detail::require<argument_error>(seeds >= 1, "uniformity_trend needs seeds >= 1");
    detail::Stopwatch clock;
    auto spread_at = [&](int n, int k, std::uint64_t seed) {
        const double bandwidth = n;
        const double power = snr * double(k) / n * bandwidth;
        const auto ch = CompoundChannel::flat(bandwidth, n, k, power);
        TrialConfig cfg;
        cfg.n = n;
        cfg.k = k;
        cfg.m = k;
        cfg.master_seed = seed;
        cfg.workers = 1;
        return loss_uniformity_report(ch, cfg).statistic;
    };
    // Per seed: min = spread at the small size, max = spread at the large size.
    const auto pairs = detail::run_trials<TrialStats>(seeds, workers, [&](std::size_t s) {
        const std::uint64_t seed = first_seed + s;
        const double a = spread_at(n_small, k_small, seed);
        const double b = spread_at(n_large, k_large, seed);
        return TrialStats{a, b, b - a};
    });
    ExperimentResult r;
    r.name = "uniformity_trend";
    r.config.n = n_large;
    r.config.k = k_large;
    r.config.m = k_large;
    r.config.trials = seeds;
    r.config.master_seed = first_seed;
    r.config.workers = workers;
    int shrinks = 0;
    for (const auto& p : pairs) {
        r.per_trial.push_back(p);
        shrinks += p.max < p.min;
    }
    r.statistic = double(shrinks) / seeds;
    r.report_only = true;
    detail::finish_bracket(r);
    r.wall_seconds = clock.seconds();
    return r;
}

}  // namespace subnyq
