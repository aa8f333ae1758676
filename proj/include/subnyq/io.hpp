#pragma once

// File formats.
//
// Channel JSON:
//   {"W": 1.0, "n": 8, "k": 2, "P": 10.0, "q": 2,
//    "gains": [[...q values...], ... n rows],
//    "state_gains": [{"state": [1, 3], "gains": [[...], ...]}]}   (optional)
// State indices in files are 1-based.
//
// Ensemble JSON: {"kind": "gaussian", "m": 4, "n": 16, "seed": 7}
//
// CSV: semicolon separated, '.' decimal point, one header row.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "capacity.hpp"
#include "channel.hpp"
#include "converse.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "samplers.hpp"

namespace subnyq {

using json = nlohmann::json;

/// Shortest "%.10g" rendering; non-finite values become "nan", "inf", "-inf".
inline std::string format_real(double v, int digits = 10) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// JSON cannot hold non-finite numbers; they are written as null.
inline json real_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json state_json(const ChannelState& s) {
    json a = json::array();
    for (int i : s.indices()) a.push_back(i + 1);
    return a;
}

inline ChannelState state_from_json(const json& j) {
    const auto v = j.get<std::vector<int>>();
    return ChannelState::from_one_based(v);
}

// ---------------------------------------------------------------------------
// Channel

inline CompoundChannel channel_from_json(const json& j) {
    try {
        const double w = j.at("W").get<double>();
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        const double p = j.at("P").get<double>();
        auto gains = j.at("gains").get<GainGrid>();
        if (j.contains("q")) {
            const int q = j.at("q").get<int>();
            for (const auto& row : gains)
                detail::require<argument_error>(static_cast<int>(row.size()) == q, "channel: gains rows must have q entries");
        }
        std::map<ChannelState, GainGrid> per_state;
        if (j.contains("state_gains"))
            for (const auto& e : j.at("state_gains")) per_state.emplace(state_from_json(e.at("state")), e.at("gains").get<GainGrid>());
        return CompoundChannel(w, n, k, p, std::move(gains), std::move(per_state));
    } catch (const json::exception& e) {
        throw argument_error(std::string("channel JSON: ") + e.what());
    }
}

inline json channel_to_json(const CompoundChannel& ch) {
    json j{{"W", ch.bandwidth()}, {"n", ch.n_subbands()}, {"k", ch.k_active()},
           {"P", ch.power()},     {"q", ch.grid_points()}, {"gains", ch.gains()}};
    if (!ch.state_gains().empty()) {
        json arr = json::array();
        for (const auto& [s, g] : ch.state_gains()) arr.push_back({{"state", state_json(s)}, {"gains", g}});
        j["state_gains"] = arr;
    }
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw argument_error("invalid JSON in " + path + ": " + e.what());
    }
}

inline CompoundChannel load_channel(const std::string& path) { return channel_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Ensemble spec

inline json ensemble_to_json(const EnsembleSpec& e) {
    return {{"kind", std::string(to_string(e.kind))}, {"m", e.rows}, {"n", e.cols}, {"seed", e.seed}};
}

inline EnsembleSpec ensemble_from_json(const json& j) {
    try {
        EnsembleSpec e;
        e.kind = parse_ensemble(j.at("kind").get<std::string>());
        e.rows = j.at("m").get<int>();
        e.cols = j.at("n").get<int>();
        e.seed = j.at("seed").get<std::uint64_t>();
        detail::require<argument_error>(e.rows >= 1 && e.rows <= e.cols, "ensemble: need 1 <= m <= n");
        return e;
    } catch (const json::exception& ex) {
        throw argument_error(std::string("ensemble JSON: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Results

inline json converse_check_json(const ConverseCheck& c) {
    return {{"n", c.n},
            {"k", c.k},
            {"m", c.m},
            {"eps", c.eps},
            {"lhs_sum", real_json(c.lhs_sum)},
            {"rhs_closed", real_json(c.rhs_closed)},
            {"relative_error", real_json(c.relative_error)}};
}

inline json trial_config_json(const TrialConfig& c) {
    return {{"n", c.n},
            {"k", c.k},
            {"m", c.m},
            {"ensemble", std::string(to_string(c.ensemble))},
            {"eps", c.eps},
            {"trials", c.trials},
            {"master_seed", c.master_seed},
            {"state_cap", c.state_cap},
            {"tau", c.tau},
            {"tolerance", c.tolerance},
            {"violation_budget", c.violation_budget},
            {"k_compare", c.k_compare}};
}

/// Machine-readable result. Worker count and wall-clock time are omitted so
/// that output depends only on the configuration and seed.
inline json experiment_json(const ExperimentResult& r) {
    json trials = json::array();
    for (const auto& t : r.per_trial) trials.push_back({real_json(t.min), real_json(t.max), real_json(t.mean)});
    json extra = json::object();
    for (const auto& [k, v] : r.extra) extra[k] = real_json(v);
    return {{"name", r.name},
            {"config", trial_config_json(r.config)},
            {"statistic", real_json(r.statistic)},
            {"reference", real_json(r.reference)},
            {"lower", real_json(r.lower)},
            {"upper", real_json(r.upper)},
            {"deterministic_bound", real_json(r.deterministic_bound)},
            {"violations", r.violations},
            {"violation_budget", r.violation_budget},
            {"report_only", r.report_only},
            {"passed", r.passed},
            {"extra", extra},
            {"per_trial_min_max_mean", trials}};
}

/// Aligned-column summary for terminals.
inline std::string experiment_text(const ExperimentResult& r) {
    std::ostringstream os;
    auto row = [&](const std::string& key, const std::string& value) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-22s %s\n", key.c_str(), value.c_str());
        os << buf;
    };
    os << r.name << '\n';
    row("n, k, m", std::to_string(r.config.n) + ", " + std::to_string(r.config.k) + ", " + std::to_string(r.config.m));
    row("trials", std::to_string(r.config.trials));
    row("statistic", format_real(r.statistic));
    row("reference", format_real(r.reference));
    row("bracket", "[" + format_real(r.lower) + ", " + format_real(r.upper) + "]");
    if (!std::isnan(r.deterministic_bound)) row("deterministic bound", format_real(r.deterministic_bound));
    row("violations", std::to_string(r.violations) + " (budget " + std::to_string(r.violation_budget) + ")");
    for (const auto& [k, v] : r.extra) row(k, format_real(v));
    row("result", r.report_only ? (r.passed ? "report (bounds held)" : "FAIL") : (r.passed ? "PASS" : "FAIL"));
    return os.str();
}

inline std::string experiment_csv(const ExperimentResult& r) {
    std::string out = "trial;min;max;mean\n";
    for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
        const auto& s = r.per_trial[t];
        out += std::to_string(t) + ';' + format_real(s.min) + ';' + format_real(s.max) + ';' + format_real(s.mean) + '\n';
    }
    return out;
}

inline json loss_report_json(const LossReport& r) {
    return {{"state", state_json(r.state)},
            {"c_sampled", r.c_sampled},
            {"c_eq", r.c_nyquist_eq},
            {"c_opt", r.c_nyquist_opt},
            {"loss_eq", r.loss_eq},
            {"loss_opt", r.loss_opt},
            {"nu", r.water_level}};
}

inline std::string loss_csv_header(bool bits) {
    std::string h = "state;c_sampled;c_eq;c_opt;loss_eq;loss_opt;nu";
    if (bits) h += ";loss_eq_bits";
    return h + '\n';
}

/// One LossReport row; the optional bits column is loss_eq / log 2.
inline std::string loss_csv_row(const LossReport& r, bool bits) {
    std::string s = r.state.to_string() + ';' + format_real(r.c_sampled) + ';' + format_real(r.c_nyquist_eq) + ';' +
                    format_real(r.c_nyquist_opt) + ';' + format_real(r.loss_eq) + ';' + format_real(r.loss_opt) + ';' +
                    format_real(r.water_level);
    if (bits) s += ';' + format_real(r.loss_eq / std::log(2.0));
    return s + '\n';
}

}  // namespace subnyq
