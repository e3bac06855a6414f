#pragma once

#include <queue>
#include <vector>

#include "cluster.hpp"
#include "errors.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

// Density clustering on a precomputed distance matrix. A core point has at
// least min_pts points (itself included) within eps; clusters are connected
// components of core points under the <= eps relation, plus their border
// points. Unreachable points keep the noise label. Cluster numbering follows
// the first core point of each cluster in index order, and a border point in
// reach of several clusters goes to the one discovered first.
inline ClusterAssignment dbscan(const DistanceMatrix& dist, double eps, int min_pts) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    if (min_pts < 1) throw InvalidArgument("min_pts must be at least 1");
    const int n = static_cast<int>(dist.size());

    std::vector<char> core(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int within = 0;
        for (int j = 0; j < n; ++j)
            if (dist(i, j) <= eps) ++within;
        core[static_cast<std::size_t>(i)] = within >= min_pts;
    }

    ClusterAssignment out;
    out.labels.assign(static_cast<std::size_t>(n), kNoise);
    int next_label = 0;
    for (int i = 0; i < n; ++i) {
        if (!core[static_cast<std::size_t>(i)] || out.labels[static_cast<std::size_t>(i)] != kNoise)
            continue;
        const int label = next_label++;
        std::queue<int> frontier;
        out.labels[static_cast<std::size_t>(i)] = label;
        frontier.push(i);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            if (!core[static_cast<std::size_t>(u)]) continue;  // border: absorbed, not expanded
            for (int v = 0; v < n; ++v) {
                if (out.labels[static_cast<std::size_t>(v)] != kNoise) continue;
                if (dist(u, v) <= eps) {
                    out.labels[static_cast<std::size_t>(v)] = label;
                    frontier.push(v);
                }
            }
        }
    }
    out.k = next_label;
    return out;
}

}  // namespace ripsmap
