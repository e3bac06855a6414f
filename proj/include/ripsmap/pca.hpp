#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "errors.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

// Scores of the mean-centered data against the top-k eigenvectors of its
// covariance, components ordered by descending eigenvalue. Sign convention:
// the largest-magnitude loading of each component is positive (ties broken
// toward the lowest row). With `standardize`, columns are z-scored first;
// zero-variance columns stay at zero.
inline PointCloud pca_project(const PointCloud& cloud, Eigen::Index k,
                              bool standardize = false) {
    const Eigen::Index n = cloud.size();
    const Eigen::Index d = cloud.dim();
    if (n < 2) throw InvalidArgument("pca_project requires at least two points");
    if (k < 1 || k > d) throw InvalidArgument("invalid-k: need 1 <= k <= dim");

    Eigen::MatrixXd centered = cloud.points.rowwise() - cloud.points.colwise().mean();
    if (standardize) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double var = centered.col(j).squaredNorm() / static_cast<double>(n - 1);
            const double sd = std::sqrt(var);
            if (sd > 0.0) centered.col(j) /= sd;
        }
    }

    const Eigen::MatrixXd cov =
        (centered.adjoint() * centered) / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw AlgorithmError("eigendecomposition failed");

    // eigenvalues come out ascending; take the trailing k, reversed
    Eigen::MatrixXd basis(d, k);
    for (Eigen::Index c = 0; c < k; ++c) {
        Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - c);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;
        basis.col(c) = v;
    }

    PointCloud out;
    out.points = centered * basis;
    out.labels = cloud.labels;
    return out;
}

}  // namespace ripsmap
