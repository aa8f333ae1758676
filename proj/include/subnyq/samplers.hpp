#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"
#include "rng.hpp"

namespace subnyq {

enum class EnsembleKind { gaussian, rademacher, uniform_sym };

inline std::string_view to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::gaussian: return "gaussian";
        case EnsembleKind::rademacher: return "rademacher";
        case EnsembleKind::uniform_sym: return "uniform_sym";
    }
    return "unknown";
}

/// Accepts "uniform" as a short form of "uniform_sym".
inline EnsembleKind parse_ensemble(std::string_view s) {
    if (s == "gaussian") return EnsembleKind::gaussian;
    if (s == "rademacher") return EnsembleKind::rademacher;
    if (s == "uniform_sym" || s == "uniform") return EnsembleKind::uniform_sym;
    throw argument_error("unknown ensemble '" + std::string(s) + "'");
}

/// Entry magnitude bound D of the bounded ensembles; nullopt for gaussian.
inline std::optional<double> entry_bound(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::rademacher: return 1.0;
        case EnsembleKind::uniform_sym: return std::sqrt(3.0);
        default: return std::nullopt;
    }
}

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::gaussian;
    int rows = 1;
    int cols = 1;
    std::uint64_t seed = 0;
};

/// Draw a single zero-mean unit-variance entry.
inline double draw_entry(EnsembleKind kind, Xoshiro256& rng) {
    switch (kind) {
        case EnsembleKind::gaussian: return rng.normal();
        case EnsembleKind::rademacher: return (rng() >> 63) ? 1.0 : -1.0;
        case EnsembleKind::uniform_sym: return std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
    }
    return 0.0;
}

/// Fill a rows x cols matrix in row-major order from `rng`.
inline RealMatrix draw_from(EnsembleKind kind, int rows, int cols, Xoshiro256& rng) {
    RealMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = draw_entry(kind, rng);
    return m;
}

/// I.i.d. matrix; identical output for identical spec. No m <= n requirement
/// is imposed here because square and tall draws are needed by the experiments.
inline RealMatrix draw_matrix(const EnsembleSpec& spec) {
    detail::require<argument_error>(spec.rows > 0 && spec.cols > 0, "draw_matrix: dimensions must be positive");
    Xoshiro256 rng(spec.seed);
    return draw_from(spec.kind, spec.rows, spec.cols, rng);
}

struct MomentReport {
    double mean;
    double variance;  ///< population variance about the sample mean
    double raw_second_moment;
    double max_abs;
    double skewness;  ///< zero when the variance is zero
};

inline MomentReport moment_report(const RealMatrix& m) {
    detail::require<argument_error>(m.size() > 0, "moment_report: empty matrix");
    const double count = double(m.size());
    const double mean = m.mean();
    double m2 = 0.0, m3 = 0.0, raw2 = 0.0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const double x = m.data()[i];
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        raw2 += x * x;
    }
    m2 /= count;
    m3 /= count;
    const double skew = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    return {mean, m2, raw2 / count, m.cwiseAbs().maxCoeff(), skew};
}

/// Periodic sampler: one m x n coefficient matrix per uniform panel of the
/// subband [0, W/n]. A flat sampler has a single panel. Whitened panels are
/// computed once on construction, which also enforces full row rank.
class SamplerSpec {
public:
    explicit SamplerSpec(std::vector<RealMatrix> panels) : panels_(std::move(panels)) {
        detail::require<argument_error>(!panels_.empty(), "sampler needs at least one panel");
        const auto m = panels_.front().rows();
        const auto n = panels_.front().cols();
        for (const auto& q : panels_) {
            detail::require<argument_error>(q.rows() == m && q.cols() == n, "all sampler panels must share dimensions");
            whitened_.push_back(whiten(q));
        }
    }

    int rows() const { return static_cast<int>(panels_.front().rows()); }
    int cols() const { return static_cast<int>(panels_.front().cols()); }
    std::size_t panels() const { return panels_.size(); }
    bool is_flat() const { return panels_.size() == 1; }

    const RealMatrix& panel(std::size_t p) const { return panels_[p]; }
    const RealMatrix& whitened(std::size_t p) const { return whitened_[p]; }

    /// Panel index covering grid point j of a q-point midpoint grid.
    std::size_t panel_for(int j, int q) const {
        const double f = (j + 0.5) / q;
        return std::min(panels_.size() - 1, static_cast<std::size_t>(f * double(panels_.size())));
    }

private:
    std::vector<RealMatrix> panels_;
    std::vector<RealMatrix> whitened_;
};

inline SamplerSpec make_flat_sampler(const RealMatrix& q) { return SamplerSpec({q}); }

inline SamplerSpec make_grid_sampler(std::vector<RealMatrix> grid) { return SamplerSpec(std::move(grid)); }

/// Flat sampler drawn from an ensemble.
inline SamplerSpec make_random_sampler(const EnsembleSpec& spec) {
    detail::require<argument_error>(spec.rows <= spec.cols, "sampler needs m <= n");
    return make_flat_sampler(draw_matrix(spec));
}

}  // namespace subnyq
