#pragma once

// Dense symmetric kernels (eigendecomposition, whitening, shifted and floored
// log-determinants) and scalar formulas (binary entropy, log-binomials and
// the asymptotic limits the experiments compare against). All logs are
// natural.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"

namespace subnyq {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kWhitenFloor = 1e-12;

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
struct SpectralDecomp {
    RealVector eigenvalues;
    RealMatrix eigenvectors;

    RealMatrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
    }
};

inline bool is_symmetric(const RealMatrix& s, double tol = kSymmetryTol) {
    if (s.rows() != s.cols()) return false;
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    return (s - s.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

inline void require_symmetric(const RealMatrix& s) {
    detail::require<argument_error>(s.rows() == s.cols() && s.rows() > 0, "matrix must be square and nonempty");
    detail::require<argument_error>(s.allFinite(), "matrix has non-finite entries");
    detail::require<argument_error>(is_symmetric(s), "matrix is not symmetric");
}

inline SpectralDecomp spectral_decomp(const RealMatrix& s) {
    require_symmetric(s);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s);
    if (solver.info() != Eigen::Success) throw numerical_error("symmetric eigensolver failed");
    const auto n = s.rows();
    SpectralDecomp out{RealVector(n), RealMatrix(n, n)};
    // Eigen returns ascending order.
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

inline RealVector symmetric_eigenvalues(const RealMatrix& s) {
    require_symmetric(s);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw numerical_error("symmetric eigensolver failed");
    return solver.eigenvalues().reverse();
}

/// Row-orthonormalised copy (QQ^T)^{-1/2} Q of a full-row-rank matrix.
inline RealMatrix whiten(const RealMatrix& q) {
    detail::require<argument_error>(q.rows() > 0 && q.cols() >= q.rows(), "whiten: need 0 < rows <= cols");
    detail::require<argument_error>(q.allFinite(), "whiten: non-finite entries");
    const RealMatrix gram = q * q.transpose();
    const auto sd = spectral_decomp(gram);
    const double floor = kWhitenFloor * gram.trace() / double(q.rows());
    const double lambda_min = sd.eigenvalues(sd.eigenvalues.size() - 1);
    if (!(lambda_min > floor)) throw singularity_error("whiten: sampling matrix is rank deficient");
    const RealVector inv_sqrt = sd.eigenvalues.cwiseSqrt().cwiseInverse();
    return sd.eigenvectors * inv_sqrt.asDiagonal() * sd.eigenvectors.transpose() * q;
}

/// log det(eps I + S) for symmetric PSD S.
inline double logdet_shifted(const RealMatrix& s, double eps) {
    detail::require<argument_error>(eps >= 0.0, "logdet_shifted: eps must be nonnegative");
    const RealVector lambda = symmetric_eigenvalues(s);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        const double v = eps + lambda(i);
        if (!(v > 0.0)) throw domain_error("logdet_shifted: eps + eigenvalue is not positive");
        acc += std::log(v);
    }
    return acc;
}

/// log of det^eps(S) = sum_i log max(lambda_i, eps).
inline double det_floor(const RealMatrix& s, double eps) {
    detail::require<argument_error>(eps > 0.0, "det_floor: eps must be positive");
    const RealVector lambda = symmetric_eigenvalues(s);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) acc += std::log(std::max(lambda(i), eps));
    return acc;
}

/// The columns of `m` listed in `cols`.
inline RealMatrix select_columns(const RealMatrix& m, std::span<const int> cols) {
    RealMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
    return out;
}

inline double max_abs_deviation_from_identity(const RealMatrix& g) {
    return (g - RealMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Scalar formulas

/// -b log b - (1-b) log(1-b); zero at the endpoints.
inline double binary_entropy(double beta) {
    detail::require<argument_error>(beta >= 0.0 && beta <= 1.0, "binary_entropy: beta outside [0, 1]");
    if (beta == 0.0 || beta == 1.0) return 0.0;
    return -beta * std::log(beta) - (1.0 - beta) * std::log1p(-beta);
}

inline double log_binomial(std::int64_t n, std::int64_t k) {
    detail::require<argument_error>(n >= 0 && k >= 0 && k <= n, "log_binomial: need 0 <= k <= n");
    if (n <= 64) return std::log(static_cast<double>(*binomial_exact(n, k)));
    return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1);
}

/// Almost-sure limit of (1/n) log det((1/n) A A^T) for an m x n ensemble, alpha = m/n.
inline double rect_logdet_limit(double alpha) {
    detail::require<argument_error>(alpha > 0.0 && alpha < 1.0, "rect_logdet_limit: alpha must lie in (0, 1)");
    return -(1.0 - alpha) * std::log1p(-alpha) - alpha;
}

/// Minimax sampled capacity loss per unit bandwidth, (1/2)[H(beta) - alpha H(beta/alpha)].
inline double minimax_limit(double alpha, double beta) {
    detail::require<argument_error>(beta > 0.0 && beta <= alpha && alpha <= 1.0,
                                    "minimax_limit: need 0 < beta <= alpha <= 1");
    return 0.5 * (binary_entropy(beta) - alpha * binary_entropy(std::min(1.0, beta / alpha)));
}

/// Limit of (1/n) log det(eps I_k + A^T B^{-1} A) with A m x k Gaussian and
/// B ~ Wishart_m(n - k, I); needs alpha > beta and alpha + beta < 1.
inline double wishart_minor_limit(double alpha, double beta) {
    detail::require<argument_error>(beta > 0.0 && alpha > beta && alpha + beta < 1.0,
                                    "wishart_minor_limit: need 0 < beta < alpha, alpha + beta < 1");
    const double d = alpha - beta;
    return -d * std::log(d) + alpha * std::log(alpha) + (1.0 - alpha - beta) * std::log1p(-beta / (1.0 - alpha)) -
           beta * std::log1p(-alpha);
}

}  // namespace subnyq
