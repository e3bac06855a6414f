#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <ripsmap/generators.hpp>
#include <ripsmap/point_cloud.hpp>
#include <ripsmap/rng.hpp>

namespace fixtures {

inline ripsmap::PointCloud unit_square_corners() {
    ripsmap::PointCloud cloud;
    cloud.points.resize(4, 2);
    cloud.points << 0, 0, 1, 0, 1, 1, 0, 1;
    return cloud;
}

inline ripsmap::PointCloud line_cloud(const std::vector<double>& xs) {
    ripsmap::PointCloud cloud;
    cloud.points.resize(static_cast<Eigen::Index>(xs.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i)
        cloud.points(static_cast<Eigen::Index>(i), 0) = xs[i];
    return cloud;
}

inline ripsmap::PointCloud random_cloud(Eigen::Index n, Eigen::Index d, ripsmap::Rng& rng,
                                        double scale = 1.0) {
    ripsmap::PointCloud cloud;
    cloud.points.resize(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) cloud.points(i, j) = scale * rng.uniform();
    return cloud;
}

// Synthetic 4-d, 3-class cloud shaped like the classic iris measurements:
// class1 sits far away from two adjacent classes. Each class is a uniform
// unit cube (per-axis standard deviation 1/sqrt(12) ~ 0.29), and the class1
// centroid is 16 away from class2, far beyond 6 within-class deviations.
inline ripsmap::PointCloud iris_analog(std::uint64_t seed, Eigen::Index per_class = 50) {
    ripsmap::Rng rng(seed);
    ripsmap::PointCloud cloud;
    cloud.points.resize(3 * per_class, 4);
    const double offsets[3][4] = {
        {8.0, 8.0, 8.0, 8.0},  // class1, linearly separated
        {0.0, 0.0, 0.0, 0.0},  // class2
        {1.2, 0.0, 0.0, 0.0},  // class3, adjacent to class2
    };
    const char* names[3] = {"class1", "class2", "class3"};
    for (int c = 0; c < 3; ++c) {
        for (Eigen::Index i = 0; i < per_class; ++i) {
            const Eigen::Index row = c * per_class + i;
            for (Eigen::Index j = 0; j < 4; ++j)
                cloud.points(row, j) = offsets[c][j] + rng.uniform();
            cloud.labels.push_back(names[c]);
        }
    }
    return cloud;
}

// Shift every point by at most `delta` in the Euclidean norm.
inline ripsmap::PointCloud perturbed(const ripsmap::PointCloud& cloud, double delta,
                                     ripsmap::Rng& rng) {
    ripsmap::PointCloud out = cloud;
    const double per_axis = delta / std::sqrt(static_cast<double>(cloud.dim()));
    for (Eigen::Index i = 0; i < out.size(); ++i)
        for (Eigen::Index j = 0; j < out.dim(); ++j)
            out.points(i, j) += rng.uniform(-per_axis, per_axis);
    return out;
}

}  // namespace fixtures
