#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace ripsmap {

enum class Metric { euclidean, manhattan };

inline std::string metric_name(Metric m) {
    return m == Metric::euclidean ? "euclidean" : "manhattan";
}

inline Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "manhattan") return Metric::manhattan;
    throw InvalidArgument("unknown metric: " + name);
}

// A finite point set in R^d. Rows are points, columns are features. Labels
// are optional per-point tags used for coloring and validation only; the
// algorithms never read them.
struct PointCloud {
    Eigen::MatrixXd points;
    std::vector<std::string> labels;  // empty, or one entry per point

    Eigen::Index size() const { return points.rows(); }
    Eigen::Index dim() const { return points.cols(); }
    bool has_labels() const { return !labels.empty(); }

    void validate() const {
        if (!points.allFinite())
            throw InvalidArgument("point cloud contains non-finite coordinates");
        if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != size())
            throw InvalidArgument("label count does not match point count");
        if (size() >= 1 && dim() < 1)
            throw InvalidArgument("nonempty cloud must have at least one feature");
    }
};

// Symmetric pairwise-distance matrix with zero diagonal.
struct DistanceMatrix {
    Eigen::MatrixXd entries;
    Metric metric = Metric::euclidean;

    Eigen::Index size() const { return entries.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries(i, j); }

    // Largest pairwise distance (0 for n <= 1).
    double max_entry() const {
        return size() == 0 ? 0.0 : entries.maxCoeff();
    }

    // Restriction to a subset of the points, in the order given.
    DistanceMatrix submatrix(const std::vector<int>& idx) const {
        const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
        DistanceMatrix sub;
        sub.metric = metric;
        sub.entries.resize(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                sub.entries(i, j) = entries(idx[i], idx[j]);
        return sub;
    }
};

inline DistanceMatrix distance_matrix(const PointCloud& cloud,
                                      Metric metric = Metric::euclidean) {
    if (cloud.size() < 1)
        throw InvalidArgument("distance_matrix requires at least one point");
    const Eigen::Index n = cloud.size();
    DistanceMatrix dist;
    dist.metric = metric;
    dist.entries = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto diff = cloud.points.row(i) - cloud.points.row(j);
            const double d = metric == Metric::euclidean
                                 ? diff.norm()
                                 : diff.cwiseAbs().sum();
            dist.entries(i, j) = d;
            dist.entries(j, i) = d;
        }
    }
    return dist;
}

// Row-wise concatenation. Either both clouds carry labels or neither does
// (an empty cloud is neutral).
inline PointCloud concat(const PointCloud& a, const PointCloud& b) {
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    if (a.dim() != b.dim())
        throw InvalidArgument("cannot concatenate clouds of different dimension");
    if (a.has_labels() != b.has_labels())
        throw InvalidArgument("cannot concatenate labeled with unlabeled cloud");
    PointCloud out;
    out.points.resize(a.size() + b.size(), a.dim());
    out.points << a.points, b.points;
    if (a.has_labels()) {
        out.labels = a.labels;
        out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    }
    return out;
}

// Uniform sample of `count` rows without replacement. Relative row order is
// preserved.
inline PointCloud sample_rows(const PointCloud& cloud, Eigen::Index count, Rng& rng) {
    const Eigen::Index n = cloud.size();
    if (count < 0 || count > n)
        throw InvalidArgument("sample size out of range");
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    for (Eigen::Index i = 0; i < count; ++i) {
        const Eigen::Index j = i + static_cast<Eigen::Index>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(static_cast<std::size_t>(count));
    std::sort(idx.begin(), idx.end());
    PointCloud out;
    out.points.resize(count, cloud.dim());
    if (cloud.has_labels()) out.labels.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.points.row(static_cast<Eigen::Index>(i)) = cloud.points.row(idx[i]);
        if (cloud.has_labels()) out.labels.push_back(cloud.labels[idx[i]]);
    }
    return out;
}

}  // namespace ripsmap
