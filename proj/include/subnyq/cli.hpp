#pragma once

// Command-line front end. Commands: verify, capacity, achievability,
// concentration, sweep, discrete.
//
// Exit codes: 0 pass, 1 usage or configuration error, 2 verification
// failure, 3 numerical failure. Output is assembled in memory and written
// only once the command has finished, so an argument error never leaves a
// partial file behind.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "capacity.hpp"
#include "channel.hpp"
#include "converse.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "samplers.hpp"

namespace subnyq::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_verification = 2, exit_numerical = 3 };

inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kLossFloor = -1e-9;
inline constexpr int kVerifyDraws = 20;

struct RunConfig {
    std::string command;
    int n = 16;
    int k = 4;
    int m = 4;
    double bandwidth = 1.0;
    std::optional<double> power;  ///< unset: derived from snr
    double snr = 100.0;
    double eps = 0.05;
    int trials = 50;
    std::uint64_t seed = 1;
    std::uint64_t state_cap = kSubsetCap;
    EnsembleKind ensemble = EnsembleKind::gaussian;
    std::string out;
    std::string format;  ///< empty: the command's default
    unsigned workers = 0;
    double perturb = 0.0;
    std::string channel;
    std::vector<double> betas;
    std::vector<double> alphas;
    std::string suite;
    bool bits = false;
    double tau = 0.02;
    int k_compare = 0;
    /// True when any of n, k, m came from a flag or the config file.
    bool dims_given = false;
};

struct Outcome {
    std::string body;     ///< written to --out or stdout
    std::string summary;  ///< human-readable, written to stderr
    int code = exit_ok;
};

inline const std::array<std::string, 6>& command_names() {
    static const std::array<std::string, 6> names{"verify", "capacity", "achievability", "concentration", "sweep", "discrete"};
    return names;
}

inline std::string usage_line() {
    return "usage: subnyq <verify|capacity|achievability|concentration|sweep|discrete> [options]  (--help for details)\n";
}

// ---------------------------------------------------------------------------
// Configuration

/// Overlay keys of a JSON config object onto `c`. Unknown keys are rejected.
inline void apply_json_config(RunConfig& c, const json& j) {
    detail::require<argument_error>(j.is_object(), "config file must hold a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "command") c.command = v.get<std::string>();
            else if (key == "n") c.n = v.get<int>(), c.dims_given = true;
            else if (key == "k") c.k = v.get<int>(), c.dims_given = true;
            else if (key == "m") c.m = v.get<int>(), c.dims_given = true;
            else if (key == "W") c.bandwidth = v.get<double>();
            else if (key == "P") c.power = v.get<double>();
            else if (key == "snr") c.snr = v.get<double>();
            else if (key == "eps") c.eps = v.get<double>();
            else if (key == "trials") c.trials = v.get<int>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "state_cap") c.state_cap = v.get<std::uint64_t>();
            else if (key == "ensemble") c.ensemble = parse_ensemble(v.get<std::string>());
            else if (key == "out") c.out = v.get<std::string>();
            else if (key == "format") c.format = v.get<std::string>();
            else if (key == "workers") c.workers = v.get<unsigned>();
            else if (key == "perturb") c.perturb = v.get<double>();
            else if (key == "channel") c.channel = v.get<std::string>();
            else if (key == "betas") c.betas = v.get<std::vector<double>>();
            else if (key == "alphas") c.alphas = v.get<std::vector<double>>();
            else if (key == "suite") c.suite = v.get<std::string>();
            else if (key == "bits") c.bits = v.get<bool>();
            else if (key == "tau") c.tau = v.get<double>();
            else if (key == "k_compare") c.k_compare = v.get<int>();
            else throw argument_error("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw argument_error(std::string("config: ") + e.what());
    }
}

inline std::uint64_t parse_seed_text(const std::string& s) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used, 0);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw argument_error("invalid seed '" + s + "'");
}

/// Grid i/20 for i in [first, last].
inline std::vector<double> twentieths(int first, int last) {
    std::vector<double> g;
    for (int i = first; i <= last; ++i) g.push_back(i / 20.0);
    return g;
}

inline std::string default_format(const std::string& command) {
    return command == "achievability" || command == "concentration" ? "json" : "csv";
}

inline void validate_common(const RunConfig& c) {
    bool known = false;
    for (const auto& name : command_names()) known = known || name == c.command;
    detail::require<argument_error>(known, c.command.empty() ? "no command given" : "unknown command '" + c.command + "'");
    detail::require<argument_error>(c.format == "csv" || c.format == "json", "--format must be csv or json");
    detail::require<argument_error>(c.trials >= 1, "--trials must be >= 1");
    detail::require<argument_error>(c.state_cap >= 1, "--state-cap must be >= 1");
    detail::require<argument_error>(c.workers <= 4096, "--workers is too large");
    detail::require<argument_error>(std::isfinite(c.eps) && c.eps >= 0.0, "--eps must be finite and nonnegative");
    detail::require<argument_error>(std::isfinite(c.snr) && c.snr > 0.0, "--snr must be positive");
    detail::require<argument_error>(std::isfinite(c.perturb), "--perturb must be finite");
    detail::require<argument_error>(c.tau > 0.0, "--tau must be positive");
    if (!c.out.empty()) {
        const auto parent = std::filesystem::path(c.out).parent_path();
        detail::require<argument_error>(parent.empty() || std::filesystem::is_directory(parent),
                                        "output directory does not exist: " + parent.string());
    }
}

inline void require_dims(const RunConfig& c) {
    detail::require<argument_error>(c.n >= 2 && c.k >= 1 && c.k <= c.m && c.m <= c.n, "need 1 <= k <= m <= n");
}

// ---------------------------------------------------------------------------
// verify

struct VerifyDraw {
    int n = 0, k = 0, m = 0;
    double residual = 0.0;
    std::vector<ConverseCheck> checks;
    bool sandwich_ok = true;
};

inline Outcome cmd_verify(const RunConfig& c) {
    if (c.dims_given) {
        require_dims(c);
        detail::require<argument_error>(binomial_saturating(c.n, c.k) <= c.state_cap, "C(n, k) exceeds --state-cap");
    }
    const std::array<double, 4> eps_grid{0.0, 0.01, 0.5, 1.0};

    std::vector<VerifyDraw> draws(kVerifyDraws);
    parallel_for(draws.size(), c.workers, [&](std::size_t i) {
        Xoshiro256 rng(trial_seed(c.seed, i));
        VerifyDraw& d = draws[i];
        if (c.dims_given) {
            d.n = c.n, d.k = c.k, d.m = c.m;
        } else {
            d.n = 4 + static_cast<int>(rng.below(9));
            d.m = 1 + static_cast<int>(rng.below(std::uint64_t(d.n)));
            d.k = 1 + static_cast<int>(rng.below(std::uint64_t(d.m)));
        }
        bool resampled = false;
        const RealMatrix b = detail::whitened_draw(EnsembleKind::gaussian, d.m, d.n, rng(), resampled);
        RealMatrix bp = b;
        bp.array() += c.perturb;
        d.residual = orthonormality_residual(bp);
        for (double eps : eps_grid) {
            d.checks.push_back(make_converse_check(d.n, d.k, d.m, eps, detail::subset_det_sum_unchecked(bp, d.k, eps, 1)));
            try {
                per_instance_sandwich(b, d.k, eps, c.state_cap, 1);
            } catch (const verification_error&) {
                d.sandwich_ok = false;
            }
        }
    });

    bool entropy_ok = true;
    for (int n = 2; n <= 60; ++n)
        for (int k = 1; k < n; ++k) {
            const double h = binary_entropy(double(k) / n);
            const double v = log_binomial(n, k) / n;
            entropy_ok = entropy_ok && h - std::log(n + 1.0) / n <= v && v <= h;
        }

    const auto flat = CompoundChannel::flat(1.0, 8, 2, 10.0, 1.0, 4);
    const ChannelState flat_state(std::vector<int>{0, 5});
    const double flat_gap = std::abs(nyquist_capacity_waterfill(flat, flat_state) - nyquist_capacity_equal(flat, flat_state));
    const bool waterfill_ok = flat_gap <= kIdentityTol;

    double max_rel = 0.0;
    int identity_failures = 0;
    bool sandwich_ok = true;
    for (const auto& d : draws) {
        sandwich_ok = sandwich_ok && d.sandwich_ok;
        for (const auto& ch : d.checks) {
            max_rel = std::max(max_rel, ch.relative_error);
            identity_failures += !(ch.relative_error <= kIdentityTol);
        }
    }

    Outcome o;
    if (c.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < draws.size(); ++i)
            for (const auto& ch : draws[i].checks) {
                auto r = converse_check_json(ch);
                r["draw"] = i;
                r["orthonormality_residual"] = draws[i].residual;
                r["passed"] = ch.relative_error <= kIdentityTol;
                rows.push_back(r);
            }
        json j{{"checks", rows},
               {"invariants",
                {{"identity", identity_failures == 0},
                 {"min_state_sandwich", sandwich_ok},
                 {"entropy_sandwich", entropy_ok},
                 {"flat_waterfill", waterfill_ok}}},
               {"max_relative_error", max_rel}};
        o.body = j.dump(2) + "\n";
    } else {
        o.body = "draw;n;k;m;eps;lhs_sum;rhs_closed;relative_error;passed\n";
        for (std::size_t i = 0; i < draws.size(); ++i)
            for (const auto& ch : draws[i].checks)
                o.body += std::to_string(i) + ';' + std::to_string(ch.n) + ';' + std::to_string(ch.k) + ';' +
                          std::to_string(ch.m) + ';' + format_real(ch.eps) + ';' + format_real(ch.lhs_sum) + ';' +
                          format_real(ch.rhs_closed) + ';' + format_real(ch.relative_error, 3) + ';' +
                          (ch.relative_error <= kIdentityTol ? "1" : "0") + '\n';
    }
    std::ostringstream s;
    s << "identity checks: " << draws.size() * eps_grid.size() << ", failures " << identity_failures
      << ", max relative error " << format_real(max_rel, 3) << '\n'
      << "min-state sandwich: " << (sandwich_ok ? "ok" : "VIOLATED") << '\n'
      << "entropy sandwich (n <= 60): " << (entropy_ok ? "ok" : "VIOLATED") << '\n'
      << "flat-channel water-filling gap " << format_real(flat_gap, 3) << ": " << (waterfill_ok ? "ok" : "VIOLATED") << '\n';
    o.summary = s.str();
    o.code = identity_failures == 0 && sandwich_ok && entropy_ok && waterfill_ok ? exit_ok : exit_verification;
    return o;
}

// ---------------------------------------------------------------------------
// capacity / discrete

inline CompoundChannel channel_for(const RunConfig& c) {
    if (!c.channel.empty()) return load_channel(c.channel);
    detail::require<argument_error>(c.n >= 2 && c.k >= 1 && c.k < c.n, "need 1 <= k < n");
    const double beta = double(c.k) / c.n;
    return CompoundChannel::flat(c.bandwidth, c.n, c.k, c.power.value_or(c.snr * beta * c.bandwidth));
}

inline Outcome loss_table(const std::vector<LossReport>& rows, const RunConfig& c, json header) {
    Outcome o;
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_i = 0;
    int negative = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].loss_eq > worst) worst = rows[i].loss_eq, worst_i = i;
        negative += rows[i].loss_eq < kLossFloor;
    }
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(loss_report_json(r));
        header["rows"] = arr;
        header["worst"] = {{"state", state_json(rows[worst_i].state)}, {"loss_eq", worst}};
        o.body = header.dump(2) + "\n";
    } else {
        o.body = loss_csv_header(c.bits);
        for (const auto& r : rows) o.body += loss_csv_row(r, c.bits);
    }
    o.summary = std::to_string(rows.size()) + " states, worst loss_eq " + format_real(worst) + " at " +
                rows[worst_i].state.to_string() + (negative ? ", NEGATIVE LOSS ROWS: " + std::to_string(negative) : "") + '\n';
    o.code = negative == 0 ? exit_ok : exit_verification;
    return o;
}

inline Outcome cmd_capacity(const RunConfig& c) {
    const auto ch = channel_for(c);
    detail::require<argument_error>(c.m >= 1 && c.m <= ch.n_subbands(), "need 1 <= m <= n");
    const auto states = enumerate_states(ch.n_subbands(), ch.k_active(), c.state_cap);
    const EnsembleSpec spec{c.ensemble, c.m, ch.n_subbands(), c.seed};
    const auto sampler = make_random_sampler(spec);
    const auto wc = worst_case_loss(ch, sampler, states.states, c.workers);
    json header{{"channel", channel_to_json(ch)}, {"sampler", ensemble_to_json(spec)}, {"states_sampled", states.sampled}};
    return loss_table(wc.per_state, c, std::move(header));
}

inline Outcome cmd_discrete(const RunConfig& c) {
    std::vector<double> gains;
    int n = c.n, k = c.k;
    if (!c.channel.empty()) {
        const auto ch = load_channel(c.channel);
        n = ch.n_subbands(), k = ch.k_active();
        for (const auto& row : ch.gains()) gains.push_back(row.front());
    } else {
        detail::require<argument_error>(n >= 2 && k >= 1 && k < n, "need 1 <= k < n");
        gains.assign(std::size_t(n), 1.0);
    }
    detail::require<argument_error>(c.m >= 1 && c.m <= n, "need 1 <= m <= n");
    const double power = c.power.value_or(c.snr * k);
    detail::require<argument_error>(std::isfinite(power) && power >= 0.0, "power must be nonnegative");
    const auto states = enumerate_states(n, k, c.state_cap);
    const EnsembleSpec spec{c.ensemble, c.m, n, c.seed};
    const RealMatrix q = draw_matrix(spec);
    std::vector<LossReport> rows(states.states.size());
    parallel_for(rows.size(), c.workers, [&](std::size_t i) { rows[i] = discrete_loss(gains, q, states.states[i], power); });
    json header{{"n", n}, {"k", k}, {"P", power}, {"sampler", ensemble_to_json(spec)}, {"states_sampled", states.sampled}};
    return loss_table(rows, c, std::move(header));
}

// ---------------------------------------------------------------------------
// experiments

inline TrialConfig trial_config(const RunConfig& c) {
    TrialConfig t;
    t.n = c.n;
    t.k = c.k;
    t.m = c.m;
    t.ensemble = c.ensemble;
    t.eps = c.eps;
    t.trials = c.trials;
    t.master_seed = c.seed;
    t.state_cap = c.state_cap;
    t.tau = c.tau;
    t.k_compare = c.k_compare;
    t.workers = c.workers;
    return t;
}

inline Outcome experiment_outcome(const ExperimentResult& r, const RunConfig& c) {
    Outcome o;
    o.body = c.format == "json" ? experiment_json(r).dump(2) + "\n" : experiment_csv(r);
    o.summary = experiment_text(r);
    o.code = r.passed ? exit_ok : exit_verification;
    return o;
}

inline Outcome cmd_achievability(const RunConfig& c) {
    auto t = trial_config(c);
    const std::string suite = c.suite.empty() ? (c.k == c.m ? "landau" : "superlandau") : c.suite;
    if (suite == "landau" || suite == "superlandau") {
        require_dims(c);
        if (suite == "superlandau") t.tolerance = 0.2;
        return experiment_outcome(suite == "landau" ? landau_achievability_trial(t) : superlandau_achievability_trial(t), c);
    }
    if (suite == "uniformity") {
        require_dims(c);
        detail::require<argument_error>(c.k < c.n, "need k < n");
        const double w = c.n;
        const auto ch = CompoundChannel::flat(w, c.n, c.k, c.snr * t.beta() * w);
        return experiment_outcome(loss_uniformity_report(ch, t), c);
    }
    if (suite == "trend") return experiment_outcome(uniformity_trend(12, 3, 20, 5, c.snr, c.trials, c.seed, c.workers), c);
    throw argument_error("unknown achievability suite '" + suite + "'");
}

inline Outcome cmd_concentration(const RunConfig& c) {
    const auto t = trial_config(c);
    const std::string suite = c.suite.empty() ? "logdet" : c.suite;
    if (suite == "logdet") return experiment_outcome(logdet_concentration_trial(t), c);
    if (suite == "rect") return experiment_outcome(rect_logdet_trial(t), c);
    if (suite == "small_eig") return experiment_outcome(small_eigenvalue_count_trial(t), c);
    if (suite == "wishart_minor") return experiment_outcome(wishart_minor_trial(t), c);
    if (suite == "wishart_det") return experiment_outcome(wishart_det_report(c.k, c.trials, c.seed, c.workers), c);
    if (suite == "inverse_wishart")
        return experiment_outcome(inverse_wishart_report(c.m, c.n, c.trials, c.seed, c.workers), c);
    throw argument_error("unknown concentration suite '" + suite + "'");
}

// ---------------------------------------------------------------------------
// sweep

/// Minimax loss surface H(beta)/2 - (alpha/2) H(beta/alpha) per Hz, and the
/// same divided by beta. Grid points with alpha < beta are skipped.
inline Outcome cmd_sweep(const RunConfig& c) {
    const auto betas = c.betas.empty() ? twentieths(1, 19) : c.betas;
    const auto alphas = c.alphas.empty() ? twentieths(1, 20) : c.alphas;
    for (double b : betas) detail::require<argument_error>(b > 0.0 && b < 1.0, "--betas must lie in (0, 1)");
    for (double a : alphas) detail::require<argument_error>(a > 0.0 && a <= 1.0, "--alphas must lie in (0, 1]");
    Outcome o;
    json rows = json::array();
    std::string csv = "beta;alpha;minimax_loss_per_hz;normalized_loss\n";
    std::size_t count = 0;
    for (double b : betas)
        for (double a : alphas) {
            if (a < b) continue;
            const double loss = minimax_limit(a, b);
            const double normalized = loss / b;
            csv += format_real(b) + ';' + format_real(a) + ';' + format_real(loss) + ';' + format_real(normalized) + '\n';
            rows.push_back({{"beta", b}, {"alpha", a}, {"minimax_loss_per_hz", loss}, {"normalized_loss", normalized}});
            ++count;
        }
    o.body = c.format == "json" ? rows.dump(2) + "\n" : csv;
    o.summary = std::to_string(count) + " sweep rows\n";
    return o;
}

// ---------------------------------------------------------------------------
// Entry point

inline Outcome dispatch(const RunConfig& c) {
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "capacity") return cmd_capacity(c);
    if (c.command == "achievability") return cmd_achievability(c);
    if (c.command == "concentration") return cmd_concentration(c);
    if (c.command == "sweep") return cmd_sweep(c);
    return cmd_discrete(c);
}

inline int write_output(const Outcome& o, const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.out.empty()) {
        out << o.body;
    } else {
        std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
        f << o.body;
        if (!f) {
            err << "error: cannot write " << c.out << '\n';
            return exit_usage;
        }
    }
    err << o.summary;
    return o.code;
}

/// Parse `args` (without the program name), run the command and return its exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Sub-Nyquist sampled capacity, converse checks and Monte Carlo experiments", "subnyq"};
    std::string positional, command, config_path, ensemble, out_path, format, channel, suite;
    std::optional<int> n, k, m, trials, k_compare;
    std::optional<double> bandwidth, power, snr, eps, perturb, tau;
    std::optional<std::uint64_t> seed, state_cap;
    std::optional<unsigned> workers;
    std::vector<double> betas, alphas;
    bool bits = false;

    app.add_option("cmd", positional, "Command (same as --command)");
    app.add_option("--command", command, "verify|capacity|achievability|concentration|sweep|discrete");
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--seed", seed, "Master seed (fallback: SUBNYQ_SEED, then 1)");
    app.add_option("--n", n, "Number of subbands / columns");
    app.add_option("--k", k, "Active subbands");
    app.add_option("--m", m, "Sampler branches / rows");
    app.add_option("--W", bandwidth, "Total bandwidth");
    app.add_option("--P", power, "Total power (default snr * beta * W)");
    app.add_option("--snr", snr, "Equal-power SNR used when --P is absent");
    app.add_option("--eps", eps, "Regularisation epsilon");
    app.add_option("--tau", tau, "Concentration parameter");
    app.add_option("--trials", trials, "Monte Carlo trials");
    app.add_option("--k-compare", k_compare, "Second dimension for the logdet spread trend");
    app.add_option("--state-cap", state_cap, "Enumeration cap on C(n, k)");
    app.add_option("--ensemble", ensemble, "gaussian|rademacher|uniform");
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--format", format, "csv|json");
    app.add_option("--workers", workers, "Worker threads (0 = all cores)");
    app.add_option("--perturb", perturb, "Add this value to every entry of B in verify (fault injection)");
    app.add_option("--channel", channel, "Channel JSON file");
    app.add_option("--betas", betas, "Sweep beta grid, comma separated")->delimiter(',');
    app.add_option("--alphas", alphas, "Sweep alpha grid, comma separated")->delimiter(',');
    app.add_option("--suite", suite, "Sub-suite for achievability or concentration");
    app.add_flag("--bits", bits, "Add a loss column in bits");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << usage_line();
        return exit_usage;
    }

    RunConfig c;
    try {
        json file_config = json::object();
        if (!config_path.empty()) {
            file_config = read_json_file(config_path);
            apply_json_config(c, file_config);
        }
        if (!positional.empty() && !command.empty() && positional != command)
            throw argument_error("conflicting commands '" + positional + "' and '" + command + "'");
        if (!command.empty()) c.command = command;
        if (!positional.empty()) c.command = positional;
        if (seed) c.seed = *seed;
        else if (!file_config.contains("seed"))
            if (const char* env = std::getenv("SUBNYQ_SEED"); env && *env) c.seed = parse_seed_text(env);
        if (n) c.n = *n, c.dims_given = true;
        if (k) c.k = *k, c.dims_given = true;
        if (m) c.m = *m, c.dims_given = true;
        if (bandwidth) c.bandwidth = *bandwidth;
        if (power) c.power = *power;
        if (snr) c.snr = *snr;
        if (eps) c.eps = *eps;
        if (tau) c.tau = *tau;
        if (perturb) c.perturb = *perturb;
        if (trials) c.trials = *trials;
        if (k_compare) c.k_compare = *k_compare;
        if (state_cap) c.state_cap = *state_cap;
        if (workers) c.workers = *workers;
        if (!ensemble.empty()) c.ensemble = parse_ensemble(ensemble);
        if (!out_path.empty()) c.out = out_path;
        if (!format.empty()) c.format = format;
        if (!channel.empty()) c.channel = channel;
        if (!suite.empty()) c.suite = suite;
        if (!betas.empty()) c.betas = betas;
        if (!alphas.empty()) c.alphas = alphas;
        if (bits) c.bits = true;
        if (c.format.empty()) c.format = default_format(c.command);
        if (c.workers == 0) c.workers = default_workers();
        validate_common(c);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n' << usage_line();
        return exit_usage;
    }

    try {
        return write_output(dispatch(c), c, out, err);
    } catch (const argument_error& e) {
        err << "error: " << e.what() << '\n' << usage_line();
        return exit_usage;
    } catch (const size_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const verification_error& e) {
        err << "verification failure: " << e.what() << '\n';
        return exit_verification;
    } catch (const precondition_error& e) {
        err << "verification failure: " << e.what() << '\n';
        return exit_verification;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace subnyq::cli
