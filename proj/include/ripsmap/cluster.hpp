#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "errors.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

// Sentinel for points outside every cluster (DBSCAN noise).
constexpr int kNoise = -1;

// A flat partition: labels[i] is a cluster index in [0, k) or kNoise.
// Cluster indices are contiguous from 0.
struct ClusterAssignment {
    std::vector<int> labels;
    int k = 0;

    std::size_t size() const { return labels.size(); }

    void validate() const {
        std::vector<char> seen(static_cast<std::size_t>(std::max(k, 0)), 0);
        for (int l : labels) {
            if (l == kNoise) continue;
            if (l < 0 || l >= k)
                throw InvalidArgument("cluster label out of range");
            seen[static_cast<std::size_t>(l)] = 1;
        }
        for (char s : seen)
            if (!s) throw InvalidArgument("cluster labels are not contiguous");
    }

    // Build from raw labels; k is inferred and contiguity checked.
    static ClusterAssignment from_labels(std::vector<int> labels) {
        ClusterAssignment a;
        int max_label = -1;
        for (int l : labels)
            if (l != kNoise) max_label = std::max(max_label, l);
        a.k = max_label + 1;
        a.labels = std::move(labels);
        a.validate();
        return a;
    }

    std::vector<std::vector<int>> groups() const {
        std::vector<std::vector<int>> g(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] != kNoise)
                g[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
        return g;
    }

    std::size_t noise_count() const {
        return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
    }
};

// Sum over clusters of squared distances to the cluster barycenter, with
// barycenters recomputed from the assignment. Noise labels are not allowed.
inline double inertia(const PointCloud& cloud, const ClusterAssignment& assignment) {
    if (static_cast<Eigen::Index>(assignment.labels.size()) != cloud.size())
        throw InvalidArgument("assignment size does not match cloud");
    if (assignment.k < 1 && cloud.size() > 0)
        throw InvalidArgument("inertia requires at least one cluster");
    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(assignment.k, cloud.dim());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(assignment.k), 0);
    for (Eigen::Index i = 0; i < cloud.size(); ++i) {
        const int l = assignment.labels[static_cast<std::size_t>(i)];
        if (l == kNoise)
            throw InvalidArgument("inertia is undefined for noise labels");
        centers.row(l) += cloud.points.row(i);
        ++counts[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < assignment.k; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0)
            throw AlgorithmError("empty-cluster: label " + std::to_string(c) +
                                 " has no members");
        centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < cloud.size(); ++i)
        total += (cloud.points.row(i) -
                  centers.row(assignment.labels[static_cast<std::size_t>(i)]))
                     .squaredNorm();
    return total;
}

}  // namespace ripsmap
