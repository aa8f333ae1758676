#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include <subnyq/combinatorics.hpp>
#include <subnyq/numerics.hpp>
#include <subnyq/rng.hpp>
#include <subnyq/samplers.hpp>

using namespace subnyq;

namespace {

RealMatrix diag(std::initializer_list<double> d) {
    RealVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return v.asDiagonal();
}

RealMatrix gaussian(int rows, int cols, std::uint64_t seed) { return draw_matrix({EnsembleKind::gaussian, rows, cols, seed}); }

// Product-formula binomial in long double, independent of binomial_exact.
long double product_binomial(int n, int k) {
    long double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

// --- rng -------------------------------------------------------------------

TEST(Rng, XoshiroReferenceOutputs) {
    Xoshiro256 a(0);
    EXPECT_EQ(a(), 0x99ec5f36cb75f2b4ULL);
    EXPECT_EQ(a(), 0xbf6e1f784956452aULL);
    EXPECT_EQ(a(), 0x1a5f849d4933e6e0ULL);
    Xoshiro256 b(42);
    EXPECT_EQ(b(), 0x15780b2e0c2ec716ULL);
    EXPECT_EQ(b(), 0x6104d9866d113a7eULL);
}

TEST(Rng, BoxMullerUsesBothOutputs) {
    Xoshiro256 r(7);
    EXPECT_NEAR(r.normal(), -0.15157274547711355, 1e-15);
    EXPECT_NEAR(r.normal(), 0.8298970879692569, 1e-15);
}

TEST(Rng, BelowStaysInRange) {
    Xoshiro256 r(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = r.below(7);
        ASSERT_LT(v, 7u);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, SeedDerivation) {
    EXPECT_EQ(trial_seed(10, 3), 9u);
    EXPECT_NE(resample_seed(5), 5u);
}

// --- combinatorics ---------------------------------------------------------

TEST(Combinatorics, BinomialMatchesProductFormula) {
    for (int n = 0; n <= 60; ++n)
        for (int k = 0; k <= n; ++k) EXPECT_EQ(static_cast<long double>(*binomial_exact(n, k)), std::round(product_binomial(n, k)));
    EXPECT_EQ(u128_to_string(*binomial_exact(64, 32)), "1832624140942590534");
    EXPECT_EQ(u128_to_string(*binomial_exact(100, 50)), "100891344545564193334812497256");
    EXPECT_EQ(binomial_saturating(16, 4), 1820u);
    EXPECT_EQ(binomial_saturating(200, 100), UINT64_MAX);
}

TEST(Combinatorics, ColexOrderAndRanks) {
    std::vector<int> c{0, 1};
    std::vector<std::vector<int>> seen{c};
    while (next_colex(c, 4)) seen.push_back(c);
    const std::vector<std::vector<int>> want{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    EXPECT_EQ(seen, want);
    for (std::size_t r = 0; r < want.size(); ++r) {
        EXPECT_EQ(colex_rank(want[r]), r);
        EXPECT_EQ(colex_unrank(r, 4, 2), want[r]);
    }
    for (std::uint64_t r = 0; r < 1820; r += 37) EXPECT_EQ(colex_rank(colex_unrank(r, 16, 4)), r);
}

TEST(Combinatorics, FloydSubsetIsSortedAndDistinct) {
    Xoshiro256 rng(11);
    for (int t = 0; t < 200; ++t) {
        const auto s = floyd_subset(30, 6, rng);
        ASSERT_EQ(s.size(), 6u);
        for (std::size_t i = 1; i < s.size(); ++i) ASSERT_LT(s[i - 1], s[i]);
        ASSERT_GE(s.front(), 0);
        ASSERT_LT(s.back(), 30);
    }
}

// --- whiten ----------------------------------------------------------------

TEST(Whiten, OrthonormalRowsAreFixed) {
    RealMatrix q(2, 3);
    q << 1, 0, 0, 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    EXPECT_LE((whiten(q) - q).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Whiten, ScalingIsRemoved) {
    RealMatrix q = RealMatrix::Zero(3, 5);
    q.leftCols(3) = 4.5 * RealMatrix::Identity(3, 3);
    RealMatrix want = RealMatrix::Zero(3, 5);
    want.leftCols(3) = RealMatrix::Identity(3, 3);
    EXPECT_LE((whiten(q) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Whiten, GaussianRowsBecomeOrthonormal) {
    const RealMatrix w = whiten(gaussian(2, 5, 99));
    EXPECT_LE(max_abs_deviation_from_identity(w * w.transpose()), 1e-10);
}

TEST(Whiten, Idempotent) {
    const RealMatrix w = whiten(gaussian(4, 9, 5));
    EXPECT_LE((whiten(w) - w).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Whiten, RowSpacePreserved) {
    const RealMatrix q = gaussian(3, 7, 8);
    const RealMatrix w = whiten(q);
    // Projecting q's rows onto w's row space must reproduce q.
    EXPECT_LE((q * w.transpose() * w - q).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Whiten, RankDeficientThrows) {
    RealMatrix q(2, 4);
    q << 1, 2, 3, 4, 2, 4, 6, 8;
    EXPECT_THROW(whiten(q), singularity_error);
    EXPECT_THROW(whiten(RealMatrix::Zero(2, 4)), singularity_error);
}

// --- spectral --------------------------------------------------------------

TEST(Spectral, DescendingAndReconstructs) {
    const RealMatrix a = gaussian(6, 6, 21);
    const RealMatrix s = a * a.transpose();
    const auto sd = spectral_decomp(s);
    for (Eigen::Index i = 1; i < sd.eigenvalues.size(); ++i) EXPECT_GE(sd.eigenvalues(i - 1), sd.eigenvalues(i));
    EXPECT_LE((sd.reconstruct() - s).norm(), 1e-9 * s.norm());
    EXPECT_LE(max_abs_deviation_from_identity(sd.eigenvectors.transpose() * sd.eigenvectors), 1e-12);
}

TEST(Spectral, RejectsAsymmetric) {
    RealMatrix s(2, 2);
    s << 1, 2, 3, 4;
    EXPECT_THROW(spectral_decomp(s), argument_error);
}

// --- log-determinants ------------------------------------------------------

TEST(LogDet, Examples) {
    EXPECT_NEAR(logdet_shifted(RealMatrix::Identity(3, 3), 0.0), 0.0, 1e-15);
    EXPECT_NEAR(logdet_shifted(RealMatrix::Zero(2, 2), 0.5), 2 * std::log(0.5), 1e-15);
    EXPECT_NEAR(logdet_shifted(diag({1, 4}), 0.01), std::log(1.01) + std::log(4.01), 1e-14);
    EXPECT_THROW(logdet_shifted(diag({1, 0}), 0.0), domain_error);
}

TEST(LogDet, FloorExamples) {
    EXPECT_NEAR(det_floor(diag({2, 0.001}), 0.01), std::log(2.0) + std::log(0.01), 1e-14);
    EXPECT_NEAR(det_floor(RealMatrix::Identity(4, 4), 0.7), 0.0, 1e-15);
    EXPECT_NEAR(det_floor(diag({3, 5}), 1.0), std::log(15.0), 1e-14);
    EXPECT_THROW(det_floor(diag({3, 5}), 0.0), argument_error);
}

TEST(LogDet, MonotoneInEps) {
    const RealMatrix a = gaussian(4, 6, 3);
    const RealMatrix s = a * a.transpose();
    double prev = logdet_shifted(s, 0.0);
    for (double eps : {0.001, 0.01, 0.1, 1.0, 10.0}) {
        const double v = logdet_shifted(s, eps);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(LogDet, UnitShiftBoundedByInverseSmallestEigenvalue) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RealMatrix a = gaussian(5, 8, seed);
        RealMatrix s = a * a.transpose();
        s = 0.5 * (s + s.transpose()).eval();
        const double lmin = symmetric_eigenvalues(s).minCoeff();
        const double d = (logdet_shifted(s, 1.0) - logdet_shifted(s, 0.0)) / 5.0;
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0 / lmin);
    }
}

TEST(LogDet, TallShortIdentity) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int m = 6, k = 3;
        const RealMatrix x = gaussian(m, k, 100 + seed);
        const double eps = 0.05;
        RealMatrix xtx = x.transpose() * x, xxt = x * x.transpose();
        xtx = 0.5 * (xtx + xtx.transpose()).eval();
        xxt = 0.5 * (xxt + xxt.transpose()).eval();
        EXPECT_NEAR(logdet_shifted(xtx, eps), (k - m) * std::log(eps) + logdet_shifted(xxt, eps), 1e-8);
    }
}

// --- scalar formulas -------------------------------------------------------

TEST(Scalar, BinaryEntropy) {
    EXPECT_NEAR(binary_entropy(0.5), std::numbers::ln2, 1e-15);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.25), 0.562335, 1e-6);
    EXPECT_THROW(binary_entropy(1.5), argument_error);
    EXPECT_THROW(binary_entropy(-0.1), argument_error);
}

TEST(Scalar, LogBinomial) {
    EXPECT_NEAR(log_binomial(4, 2), std::log(6.0), 1e-15);
    EXPECT_EQ(log_binomial(9, 0), 0.0);
    EXPECT_NEAR(log_binomial(100, 50), std::log(static_cast<double>(product_binomial(100, 50))), 1e-10);
}

TEST(Scalar, EntropySandwichUpToSixty) {
    for (int n = 2; n <= 60; ++n)
        for (int k = 1; k < n; ++k) {
            const double h = binary_entropy(double(k) / n);
            const double v = log_binomial(n, k) / n;
            ASSERT_LE(h - std::log(n + 1.0) / n, v) << n << "," << k;
            ASSERT_LE(v, h) << n << "," << k;
        }
}

TEST(Scalar, RectLogdetLimit) {
    EXPECT_NEAR(rect_logdet_limit(0.5), 0.5 * std::log(2.0) - 0.5, 1e-15);
    EXPECT_NEAR(rect_logdet_limit(0.5), -0.153426, 1e-6);
    EXPECT_LT(std::abs(rect_logdet_limit(1e-6)), 3e-6);
    EXPECT_NEAR(rect_logdet_limit(0.25), 0.75 * std::log(4.0 / 3.0) - 0.25, 1e-15);
    EXPECT_THROW(rect_logdet_limit(1.0), argument_error);
}

TEST(Scalar, MinimaxLimit) {
    for (double b : {0.1, 0.25, 0.5, 0.8}) EXPECT_NEAR(minimax_limit(b, b), binary_entropy(b) / 2, 1e-15);
    for (double b : {0.1, 0.25, 0.5, 0.8}) EXPECT_EQ(minimax_limit(1.0, b), 0.0);
    EXPECT_NEAR(minimax_limit(0.5, 0.25), 0.5 * (0.5623351446188083 - 0.5 * std::numbers::ln2), 1e-15);
    EXPECT_NEAR(minimax_limit(0.5, 0.25), 0.10788077716941782, 1e-15);
    EXPECT_THROW(minimax_limit(0.2, 0.3), argument_error);
}

TEST(Scalar, WishartMinorLimit) {
    const double want = -0.3 * std::log(0.3) + 0.5 * std::log(0.5) + 0.3 * std::log(1 - 0.4) - 0.2 * std::log(0.5);
    EXPECT_NEAR(wishart_minor_limit(0.5, 0.2), want, 1e-15);
    EXPECT_LT(std::abs(wishart_minor_limit(0.5, 0.01)), 0.08);
    EXPECT_THROW(wishart_minor_limit(0.3, 0.4), argument_error);
}
