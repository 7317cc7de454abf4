#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/types.hpp"

namespace unlearn_eval {

// Gaussian fit of a feature cloud: sample mean and unbiased covariance.
struct GaussianSummary {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    std::size_t n = 0;

    std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
};

inline GaussianSummary fit_gaussian(const FeatureSet& features) {
    if (features.rows.size() < 2) {
        throw Error(ErrorCode::InsufficientSamples,
                    "fit_gaussian needs n >= 2, got " + std::to_string(features.rows.size()));
    }
    const auto n = static_cast<Eigen::Index>(features.rows.size());
    const auto d = static_cast<Eigen::Index>(features.dim);
    Eigen::MatrixXd X(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = features.rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != d) {
            throw Error(ErrorCode::DimensionMismatch, static_cast<std::size_t>(i),
                        "feature row has inconsistent dimension");
        }
        for (Eigen::Index j = 0; j < d; ++j) X(i, j) = row[static_cast<std::size_t>(j)];
    }
    GaussianSummary g;
    g.n = features.rows.size();
    g.mean = X.colwise().mean();
    const Eigen::MatrixXd centered = X.rowwise() - g.mean.transpose();
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
    // Enforce exact symmetry against floating-point drift.
    g.covariance = 0.5 * (cov + cov.transpose());
    return g;
}

// Principal square root of a symmetric PSD matrix via eigendecomposition.
// Eigenvalues in [-epsilon, 0) are clipped to zero; below -epsilon the input
// is rejected as not PSD.
inline Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m, double epsilon) {
    require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "matrix_sqrt_psd: not square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (((m - m.transpose()).cwiseAbs().maxCoeff()) > 1e-8 * scale) {
        throw Error(ErrorCode::PreconditionFailed, "matrix_sqrt_psd: matrix not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));
    require(solver.info() == Eigen::Success, ErrorCode::MetricError,
            "matrix_sqrt_psd: eigendecomposition failed");
    Eigen::VectorXd eigenvalues = solver.eigenvalues();
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (eigenvalues(i) < -epsilon) {
            throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(eigenvalues(i)) +
                                               " below -epsilon");
        }
        if (eigenvalues(i) < 0.0) eigenvalues(i) = 0.0;
    }
    const Eigen::MatrixXd& V = solver.eigenvectors();
    return V * eigenvalues.cwiseSqrt().asDiagonal() * V.transpose();
}

// Fréchet distance between two Gaussians:
//   ||mu_a - mu_b||^2 + tr(Sig_a + Sig_b - 2 (Sig_a Sig_b)^{1/2})
// with the product term computed through the symmetrized kernel
// Sig_a^{1/2} Sig_b Sig_a^{1/2} so everything stays in real symmetric
// arithmetic. Slightly negative results within 10*epsilon clamp to zero.
inline double frechet_distance(const GaussianSummary& a, const GaussianSummary& b,
                               double epsilon) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "frechet_distance: dims " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
    }
    const Eigen::MatrixXd root_a = matrix_sqrt_psd(a.covariance, epsilon);
    Eigen::MatrixXd kernel = root_a * b.covariance * root_a;
    kernel = 0.5 * (kernel + kernel.transpose());
    const Eigen::MatrixXd cross = matrix_sqrt_psd(kernel, epsilon);

    const double mean_term = (a.mean - b.mean).squaredNorm();
    const double trace_term =
        a.covariance.trace() + b.covariance.trace() - 2.0 * cross.trace();
    double value = mean_term + trace_term;
    if (value < 0.0) {
        if (value < -10.0 * epsilon) {
            throw Error(ErrorCode::MetricError,
                        "frechet_distance negative beyond tolerance: " + std::to_string(value));
        }
        value = 0.0;
    }
    return value;
}

}  // namespace unlearn_eval
