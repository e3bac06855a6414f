#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "cluster.hpp"
#include "errors.hpp"
#include "point_cloud.hpp"
#include "rng.hpp"

namespace ripsmap {

enum class KMeansInit { random_points, plus_plus, explicit_centers };

struct KMeansParams {
    int k = 1;
    KMeansInit init = KMeansInit::plus_plus;
    std::uint64_t seed = 0;
    int max_iter = 300;
    double tol = 1e-6;
    std::optional<Eigen::MatrixXd> initial_centers;  // for explicit_centers
};

struct KMeansResult {
    ClusterAssignment assignment;
    Eigen::MatrixXd centers;  // k x d
    double inertia = 0.0;
    int iterations = 0;
    bool converged = false;
    // objective after each assign+update round; non-increasing
    std::vector<double> objective_trace;
};

// Centers drawn by the D^2 weighting rule: first center uniform over the
// points, each subsequent one picked with probability proportional to the
// squared distance to the nearest center already chosen. Always returns k
// distinct input points.
inline Eigen::MatrixXd kmeans_pp_init(const PointCloud& cloud, int k, Rng& rng) {
    const Eigen::Index n = cloud.size();
    if (k < 1 || static_cast<Eigen::Index>(k) > n)
        throw InvalidArgument("k-exceeds-n: need 1 <= k <= n");
    std::vector<Eigen::Index> chosen;
    std::vector<char> is_chosen(static_cast<std::size_t>(n), 0);
    chosen.push_back(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
    is_chosen[static_cast<std::size_t>(chosen[0])] = 1;
    Eigen::VectorXd d2 =
        (cloud.points.rowwise() - cloud.points.row(chosen[0])).rowwise().squaredNorm();
    while (static_cast<int>(chosen.size()) < k) {
        const double total = d2.sum();
        Eigen::Index next = -1;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double cum = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                cum += d2(i);
                if (cum > r) {
                    next = i;
                    break;
                }
            }
            if (next < 0) {  // rounding pushed r past the last positive weight
                for (Eigen::Index i = n - 1; i >= 0; --i)
                    if (d2(i) > 0.0) {
                        next = i;
                        break;
                    }
            }
        } else {
            // all remaining points coincide with chosen centers; pick the
            // uniformly random unchosen one
            std::uint64_t skip = rng.below(static_cast<std::uint64_t>(n) - chosen.size());
            for (Eigen::Index i = 0; i < n; ++i) {
                if (is_chosen[static_cast<std::size_t>(i)]) continue;
                if (skip == 0) {
                    next = i;
                    break;
                }
                --skip;
            }
        }
        chosen.push_back(next);
        is_chosen[static_cast<std::size_t>(next)] = 1;
        d2 = d2.cwiseMin(
            (cloud.points.rowwise() - cloud.points.row(next)).rowwise().squaredNorm());
    }
    Eigen::MatrixXd centers(k, cloud.dim());
    for (int c = 0; c < k; ++c) centers.row(c) = cloud.points.row(chosen[static_cast<std::size_t>(c)]);
    return centers;
}

inline Eigen::MatrixXd kmeans_pp_init(const PointCloud& cloud, int k, std::uint64_t seed) {
    Rng rng(seed);
    return kmeans_pp_init(cloud, k, rng);
}

namespace detail {

inline Eigen::MatrixXd random_point_centers(const PointCloud& cloud, int k, Rng& rng) {
    const Eigen::Index n = cloud.size();
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    for (int i = 0; i < k; ++i) {
        const Eigen::Index j =
            i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    Eigen::MatrixXd centers(k, cloud.dim());
    for (int c = 0; c < k; ++c) centers.row(c) = cloud.points.row(idx[static_cast<std::size_t>(c)]);
    return centers;
}

}  // namespace detail

// Lloyd iterations: assign each point to its nearest center (ties toward the
// lowest center index), recompute barycenters, stop when no center moves more
// than tol or max_iter is reached. A cluster that loses all members is
// reseeded with the point farthest from its nearest center, which keeps k
// fixed and the objective non-increasing.
inline KMeansResult kmeans(const PointCloud& cloud, const KMeansParams& params) {
    const Eigen::Index n = cloud.size();
    const int k = params.k;
    if (k < 1 || static_cast<Eigen::Index>(k) > n)
        throw InvalidArgument("k-exceeds-n: need 1 <= k <= n");
    if (params.max_iter < 1)
        throw InvalidArgument("max_iter must be at least 1");
    if (params.tol < 0.0)
        throw InvalidArgument("tol must be nonnegative");

    Rng rng(params.seed);
    Eigen::MatrixXd centers;
    switch (params.init) {
        case KMeansInit::random_points:
            centers = detail::random_point_centers(cloud, k, rng);
            break;
        case KMeansInit::plus_plus:
            centers = kmeans_pp_init(cloud, k, rng);
            break;
        case KMeansInit::explicit_centers:
            if (!params.initial_centers)
                throw InvalidArgument("explicit_centers init requires initial_centers");
            centers = *params.initial_centers;
            if (centers.rows() != k || centers.cols() != cloud.dim())
                throw InvalidArgument("initial_centers must be k x dim");
            break;
    }

    KMeansResult result;
    result.assignment.labels.assign(static_cast<std::size_t>(n), 0);
    result.assignment.k = k;

    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    Eigen::VectorXd nearest_d2(n);

    for (int iter = 1; iter <= params.max_iter; ++iter) {
        // step 1: nearest-center assignment
        std::fill(counts.begin(), counts.end(), Eigen::Index{0});
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d2 = (cloud.points.row(i) - centers.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d2 = (cloud.points.row(i) - centers.row(c)).squaredNorm();
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = c;
                }
            }
            result.assignment.labels[static_cast<std::size_t>(i)] = best;
            nearest_d2(i) = best_d2;
            ++counts[static_cast<std::size_t>(best)];
        }

        // empty-cluster repair: hand the farthest point to each empty cluster
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index far = 0;
            double far_d2 = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const int owner = result.assignment.labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(owner)] <= 1) continue;
                if (nearest_d2(i) > far_d2) {
                    far_d2 = nearest_d2(i);
                    far = i;
                }
            }
            const int owner = result.assignment.labels[static_cast<std::size_t>(far)];
            --counts[static_cast<std::size_t>(owner)];
            result.assignment.labels[static_cast<std::size_t>(far)] = c;
            counts[static_cast<std::size_t>(c)] = 1;
            nearest_d2(far) = 0.0;
        }

        // step 2: barycenter update
        Eigen::MatrixXd new_centers = Eigen::MatrixXd::Zero(k, cloud.dim());
        for (Eigen::Index i = 0; i < n; ++i)
            new_centers.row(result.assignment.labels[static_cast<std::size_t>(i)]) +=
                cloud.points.row(i);
        for (int c = 0; c < k; ++c)
            new_centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

        double max_move = 0.0;
        for (int c = 0; c < k; ++c)
            max_move = std::max(max_move, (new_centers.row(c) - centers.row(c)).norm());
        centers = new_centers;
        result.iterations = iter;

        double objective = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            objective += (cloud.points.row(i) -
                          centers.row(result.assignment.labels[static_cast<std::size_t>(i)]))
                             .squaredNorm();
        result.objective_trace.push_back(objective);

        if (max_move <= params.tol) {
            result.converged = true;
            break;
        }
    }

    result.centers = centers;
    result.inertia = result.objective_trace.back();
    return result;
}

}  // namespace ripsmap
