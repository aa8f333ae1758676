#include <gtest/gtest.h>

#include <cmath>

#include <subnyq/experiments.hpp>
#include <subnyq/io.hpp>

using namespace subnyq;

namespace {

TrialConfig achievability_config(int n, int k, int m, EnsembleKind kind = EnsembleKind::gaussian) {
    TrialConfig c;
    c.n = n;
    c.k = k;
    c.m = m;
    c.ensemble = kind;
    c.eps = 0.05;
    c.trials = 50;
    c.master_seed = 7;
    return c;
}

}  // namespace

TEST(Achievability, LandauBracketAndBound) {
    const auto r = landau_achievability_trial(achievability_config(16, 4, 4));
    EXPECT_EQ(r.violations, 0);
    EXPECT_EQ(r.per_trial.size(), 50u);
    EXPECT_NEAR(r.reference, -0.562335, 1e-6);
    EXPECT_NEAR(r.statistic, r.reference, 0.15);
    EXPECT_TRUE(r.passed);
    for (const auto& t : r.per_trial) {
        ASSERT_LE(t.min, r.deterministic_bound);
        ASSERT_LE(t.min, t.mean);
        ASSERT_LE(t.mean, t.max);
    }
}

TEST(Achievability, LandauUniversality) {
    const auto g = landau_achievability_trial(achievability_config(16, 4, 4));
    const auto r = landau_achievability_trial(achievability_config(16, 4, 4, EnsembleKind::rademacher));
    EXPECT_EQ(r.violations, 0);
    EXPECT_LT(std::abs(g.statistic - r.statistic), 0.05);
}

TEST(Achievability, SuperLandauBracketAndBound) {
    auto c = achievability_config(16, 4, 8);
    c.tolerance = 0.2;
    const auto r = superlandau_achievability_trial(c);
    EXPECT_EQ(r.violations, 0);
    EXPECT_NEAR(r.reference, -0.215761, 1e-6);
    EXPECT_NEAR(r.statistic, r.reference, 0.2);
    EXPECT_FALSE(r.report_only);
    EXPECT_TRUE(r.passed);
}

TEST(Achievability, NyquistSanity) {
    auto c = achievability_config(12, 3, 12);
    c.trials = 20;
    const auto r = superlandau_achievability_trial(c);
    EXPECT_EQ(r.violations, 0);
    EXPECT_TRUE(r.report_only);
    for (const auto& t : r.per_trial) EXPECT_GE(t.min, -0.25);
}

TEST(Achievability, Preconditions) {
    EXPECT_THROW(landau_achievability_trial(achievability_config(16, 3, 4)), argument_error);
    EXPECT_THROW(superlandau_achievability_trial(achievability_config(16, 4, 4)), argument_error);
    EXPECT_THROW(landau_achievability_trial(achievability_config(16, 5, 4)), argument_error);
    auto c = achievability_config(16, 4, 4);
    c.state_cap = 100;
    EXPECT_THROW(landau_achievability_trial(c), size_error);
    c = achievability_config(16, 4, 4);
    c.trials = 0;
    EXPECT_THROW(landau_achievability_trial(c), argument_error);
}

TEST(Achievability, WorkerIndependent) {
    auto c = achievability_config(10, 3, 3);
    c.trials = 12;
    const auto a = landau_achievability_trial(c);
    c.workers = 4;
    const auto b = landau_achievability_trial(c);
    EXPECT_EQ(experiment_json(a).at("per_trial_min_max_mean"), experiment_json(b).at("per_trial_min_max_mean"));
    EXPECT_EQ(a.statistic, b.statistic);
}

TEST(Concentration, LogdetBracketAndSpread) {
    TrialConfig c;
    c.k = 100;
    c.eps = 0.1;
    c.trials = 200;
    c.master_seed = 3;
    c.k_compare = 0;
    const auto r = logdet_concentration_trial(c);
    const double slack = 3 * *r.get_extra("std") / std::sqrt(200.0);
    EXPECT_NEAR(r.lower, -1 + std::log(100.0) / 200 - 2.0 / 10 - slack, 1e-12);
    EXPECT_NEAR(r.upper, -1 + 1.5 * std::log(100 * std::exp(1.0)) / 100 + 2 * std::sqrt(0.1) * std::log(10.0) + slack, 1e-12);
    EXPECT_TRUE(r.passed);

    c.ensemble = EnsembleKind::rademacher;
    EXPECT_TRUE(logdet_concentration_trial(c).passed);

    c.ensemble = EnsembleKind::gaussian;
    c.k = 50;
    c.k_compare = 200;
    c.trials = 100;
    const auto t = logdet_concentration_trial(c);
    EXPECT_EQ(*t.get_extra("spread_shrinks"), 1.0);
    EXPECT_LT(*t.get_extra("std_compare"), *t.get_extra("std"));

    c.eps = 0.9;
    EXPECT_THROW(logdet_concentration_trial(c), argument_error);
}

TEST(Concentration, WishartDeterminant) {
    EXPECT_NEAR(wishart_det_expectation(1, 100000, 1), 1.0, 0.02);
    const double r3 = wishart_det_expectation(3, 200000, 2);
    EXPECT_GE(r3, 0.95);
    EXPECT_LE(r3, 1.05);
    const double r4 = wishart_det_expectation(4, 500000, 3);
    EXPECT_GE(r4, 0.9);
    EXPECT_LE(r4, 1.1);
    EXPECT_THROW(wishart_det_expectation(7, 10, 1), argument_error);
}

TEST(Concentration, RectLogdet) {
    TrialConfig c;
    c.n = 400;
    c.m = 200;
    c.trials = 100;
    c.master_seed = 4;
    c.violation_budget = 5;
    const auto r = rect_logdet_trial(c);
    EXPECT_GE(r.statistic, 0.95);
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.reference, -0.153426, 1e-6);

    TrialConfig small = c;
    small.n = 100;
    small.m = 50;
    small.trials = 50;
    c.trials = 50;
    EXPECT_LT(*rect_logdet_trial(c).get_extra("median_abs_deviation"), *rect_logdet_trial(small).get_extra("median_abs_deviation"));

    c.m = 20;
    EXPECT_THROW(rect_logdet_trial(c), argument_error);
}

TEST(Concentration, SmallEigenvalueCount) {
    TrialConfig c;
    c.n = 300;
    c.m = 150;
    c.eps = 0.05;
    c.tau = 0.02;
    c.trials = 100;
    c.master_seed = 5;
    const auto r = small_eigenvalue_count_trial(c);
    EXPECT_EQ(r.violations, 0);
    EXPECT_TRUE(r.passed);

    c.eps = 1e-9;
    c.trials = 10;
    EXPECT_EQ(small_eigenvalue_count_trial(c).violations, 0);
    EXPECT_GT(small_eigenvalue_bound(0.5, 1e-9, 0.02, 300), 1.0);

    const RealMatrix a = draw_matrix({EnsembleKind::gaussian, 150, 300, 9});
    RealMatrix g = a * a.transpose() / 300.0;
    g = 0.5 * (g + g.transpose()).eval();
    const RealVector ev = symmetric_eigenvalues(g);
    double prev = 1.0;
    for (double eps : {1.0, 0.5, 0.2, 0.1, 0.05, 0.01}) {
        const double f = small_eigenvalue_fraction(ev, eps, 300);
        EXPECT_LE(f, prev);
        prev = f;
    }
}

TEST(Concentration, WishartMinor) {
    TrialConfig c;
    c.n = 200;
    c.m = 100;
    c.k = 40;
    c.eps = 0.01;
    c.trials = 50;
    c.master_seed = 6;
    const auto r = wishart_minor_trial(c);
    EXPECT_GE(r.statistic, r.reference - 0.15);
    EXPECT_TRUE(r.passed);
    c.k = 90;
    EXPECT_THROW(wishart_minor_trial(c), argument_error);
}

TEST(Concentration, InverseWishartTrace) {
    const double a = inverse_wishart_trace_trial(5, 50, 10000, 1);
    EXPECT_GE(a, 0.97);
    EXPECT_LE(a, 1.03);
    EXPECT_NEAR(inverse_wishart_trace_trial(1, 10, 100000, 2), 1.0, 0.03);
    EXPECT_NEAR(inverse_wishart_trace_trial(20, 25, 100000, 3), 1.0, 0.1);
    EXPECT_THROW(inverse_wishart_trace_trial(5, 6, 10, 1), argument_error);
}

TEST(Uniformity, TrendShrinksWithN) {
    const auto r = uniformity_trend(12, 3, 20, 5, 1e3, 20, 1, 2);
    EXPECT_GE(r.statistic, 0.8);
}

TEST(Uniformity, NyquistAndAdversarialSamplers) {
    const auto ch = CompoundChannel::flat(6.0, 6, 2, 1e3 * 2);
    TrialConfig c;
    c.n = 6;
    c.k = 2;
    c.m = 6;
    const auto nyq = loss_uniformity_report(ch, make_flat_sampler(RealMatrix::Identity(6, 6)), c);
    EXPECT_LE(std::abs(nyq.per_trial[0].min), 1e-9);
    EXPECT_LE(std::abs(nyq.per_trial[0].max), 1e-9);

    RealMatrix q = RealMatrix::Zero(2, 6);
    q(0, 0) = q(1, 1) = 1.0;
    c.m = 2;
    const auto adv = loss_uniformity_report(ch, make_flat_sampler(q), c);
    const auto gauss = loss_uniformity_report(ch, c);
    EXPECT_GT(adv.per_trial[0].max, gauss.per_trial[0].max);
    EXPECT_NEAR(adv.per_trial[0].min, 0.0, 1e-12);
    EXPECT_NEAR(adv.per_trial[0].max, nyquist_capacity_equal(ch, ChannelState(std::vector<int>{2, 3})), 1e-12);
    EXPECT_EQ(*adv.get_extra("states"), 15.0);
}

TEST(Results, JsonExcludesWallClock) {
    auto c = achievability_config(8, 2, 2);
    c.trials = 3;
    const auto r = landau_achievability_trial(c);
    const auto j = experiment_json(r);
    EXPECT_FALSE(j.contains("wall_seconds"));
    EXPECT_EQ(j.at("per_trial_min_max_mean").size(), 3u);
    EXPECT_NE(experiment_text(r).find("PASS"), std::string::npos);
}
