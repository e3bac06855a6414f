#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "point_cloud.hpp"
#include "rng.hpp"

namespace ripsmap {

// Uniform sample over the annulus r_inner <= ||p|| <= r_outer. The radius is
// drawn by inverse CDF, r = sqrt(u * (ro^2 - ri^2) + ri^2), which is uniform
// over the annulus area.
inline PointCloud generate_annulus(Eigen::Index n, double r_inner, double r_outer,
                                   std::uint64_t seed) {
    if (n < 0) throw InvalidArgument("invalid-radii: n must be nonnegative");
    if (!(r_inner >= 0.0) || !(r_inner < r_outer))
        throw InvalidArgument("invalid-radii: need 0 <= r_inner < r_outer");
    Rng rng(seed);
    PointCloud cloud;
    cloud.points.resize(n, 2);
    const double ri2 = r_inner * r_inner;
    const double ro2 = r_outer * r_outer;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double theta = rng.uniform() * 2.0 * M_PI;
        // clamp guards the boundary against sqrt rounding
        const double r = std::clamp(std::sqrt(u * (ro2 - ri2) + ri2), r_inner, r_outer);
        cloud.points(i, 0) = r * std::cos(theta);
        cloud.points(i, 1) = r * std::sin(theta);
    }
    return cloud;
}

// Uniform sample over the axis-aligned square with lower-left `corner`.
inline PointCloud generate_square(Eigen::Index n, double corner_x, double corner_y,
                                  double side, std::uint64_t seed) {
    if (n < 0) throw InvalidArgument("invalid-side: n must be nonnegative");
    if (!(side > 0.0)) throw InvalidArgument("invalid-side: side must be positive");
    Rng rng(seed);
    PointCloud cloud;
    cloud.points.resize(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        cloud.points(i, 0) = corner_x + side * rng.uniform();
        cloud.points(i, 1) = corner_y + side * rng.uniform();
    }
    return cloud;
}

inline PointCloud with_uniform_label(PointCloud cloud, const std::string& label) {
    cloud.labels.assign(static_cast<std::size_t>(cloud.size()), label);
    return cloud;
}

// 100 points in the unit square at (0,0) plus 100 in the unit square at
// (5,5). Labels record the source square.
inline PointCloud two_squares(std::uint64_t seed, Eigen::Index per_square = 100) {
    Rng rng(seed);
    PointCloud a = with_uniform_label(
        generate_square(per_square, 0.0, 0.0, 1.0, rng.split(0).seed()), "square1");
    PointCloud b = with_uniform_label(
        generate_square(per_square, 5.0, 5.0, 1.0, rng.split(1).seed()), "square2");
    return concat(a, b);
}

// 500 points in the ring [1, 2] plus 1000 in the ring [5, 10], concentric.
inline PointCloud two_circles(std::uint64_t seed, Eigen::Index n_inner = 500,
                              Eigen::Index n_outer = 1000) {
    Rng rng(seed);
    PointCloud a = with_uniform_label(
        generate_annulus(n_inner, 1.0, 2.0, rng.split(0).seed()), "inner");
    PointCloud b = with_uniform_label(
        generate_annulus(n_outer, 5.0, 10.0, rng.split(1).seed()), "outer");
    return concat(a, b);
}

}  // namespace ripsmap
