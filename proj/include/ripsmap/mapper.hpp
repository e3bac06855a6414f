#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cluster.hpp"
#include "dbscan.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "kmeans.hpp"
#include "linkage.hpp"
#include "pca.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

// The filter map f: X -> R^k evaluated per point. Coordinate lenses copy one
// column, pca lenses project onto leading principal components, external
// lenses supply precomputed values.
struct Lens {
    enum class Kind { coordinate, pca, external };
    Kind kind = Kind::coordinate;
    int axis = 0;        // coordinate
    int components = 1;  // pca
    Eigen::MatrixXd table;  // external, one row per point

    Eigen::Index output_dim() const {
        switch (kind) {
            case Kind::coordinate: return 1;
            case Kind::pca: return components;
            case Kind::external: return table.cols();
        }
        return 1;
    }

    static Lens coordinate(int axis) {
        Lens lens;
        lens.kind = Kind::coordinate;
        lens.axis = axis;
        return lens;
    }
    static Lens pca(int components) {
        Lens lens;
        lens.kind = Kind::pca;
        lens.components = components;
        return lens;
    }
    static Lens external(Eigen::MatrixXd table) {
        Lens lens;
        lens.kind = Kind::external;
        lens.table = std::move(table);
        return lens;
    }
};

inline Eigen::MatrixXd evaluate_lens(const PointCloud& cloud, const Lens& lens) {
    switch (lens.kind) {
        case Lens::Kind::coordinate: {
            if (lens.axis < 0 || lens.axis >= cloud.dim())
                throw InvalidArgument("axis-out-of-range: lens axis " +
                                      std::to_string(lens.axis));
            return cloud.points.col(lens.axis);
        }
        case Lens::Kind::pca:
            return pca_project(cloud, lens.components).points;
        case Lens::Kind::external: {
            if (lens.table.rows() != cloud.size())
                throw InvalidArgument("row-count-mismatch: lens table has " +
                                      std::to_string(lens.table.rows()) + " rows, cloud " +
                                      std::to_string(cloud.size()));
            if (!lens.table.allFinite())
                throw InvalidArgument("lens values must be finite");
            return lens.table;
        }
    }
    throw InvalidArgument("unknown lens kind");
}

// Overlapping interval cover of the lens image: per dimension, equal-length
// intervals of length L*(1+overlap) stepped by L = range/n_intervals and
// clipped to the data range. A multi-dimensional cover is the cartesian
// product of the per-dimension interval lists.
struct Cover {
    struct Interval {
        double lo = 0.0;
        double hi = 0.0;
        bool contains(double v) const { return lo <= v && v <= hi; }
    };
    std::vector<std::vector<Interval>> axes;
    int n_intervals = 1;
    double overlap = 0.0;

    std::size_t element_count() const {
        std::size_t count = 1;
        for (const auto& axis : axes) count *= axis.size();
        return count;
    }

    // Per-axis interval indices of a flat element index (row-major).
    std::vector<std::size_t> element_coords(std::size_t flat) const {
        std::vector<std::size_t> coords(axes.size());
        for (std::size_t d = axes.size(); d-- > 0;) {
            coords[d] = flat % axes[d].size();
            flat /= axes[d].size();
        }
        return coords;
    }

    bool contains(std::size_t flat, const Eigen::RowVectorXd& value) const {
        const auto coords = element_coords(flat);
        for (std::size_t d = 0; d < axes.size(); ++d)
            if (!axes[d][coords[d]].contains(value(static_cast<Eigen::Index>(d))))
                return false;
        return true;
    }
};

inline Cover build_cover(const Eigen::MatrixXd& values, int n_intervals, double overlap) {
    if (values.rows() < 1) throw InvalidArgument("cover requires at least one value");
    if (n_intervals < 1) throw InvalidArgument("n_intervals must be at least 1");
    if (!(overlap >= 0.0) || !(overlap < 1.0))
        throw InvalidArgument("overlap_frac must lie in [0, 1)");
    Cover cover;
    cover.n_intervals = n_intervals;
    cover.overlap = overlap;
    cover.axes.resize(static_cast<std::size_t>(values.cols()));
    for (Eigen::Index d = 0; d < values.cols(); ++d) {
        const double lo = values.col(d).minCoeff();
        const double hi = values.col(d).maxCoeff();
        auto& axis = cover.axes[static_cast<std::size_t>(d)];
        if (hi == lo) {
            axis.push_back({lo, hi});  // degenerate range: one interval
            continue;
        }
        const double step = (hi - lo) / n_intervals;
        const double length = step * (1.0 + overlap);
        for (int i = 0; i < n_intervals; ++i) {
            const double a = lo + i * step;
            axis.push_back({a, std::min(a + length, hi)});
        }
    }
    return cover;
}

// Clustering algorithm applied inside each cover element.
struct SingleLinkageGapClusterer {
    int bins = 10;
};
struct DbscanClusterer {
    double eps = 0.5;
    int min_pts = 5;
};
struct KMeansClusterer {
    int k = 1;
};
using MapperClusterer =
    std::variant<SingleLinkageGapClusterer, DbscanClusterer, KMeansClusterer>;

struct NodeStats {
    std::size_t count = 0;
    Eigen::VectorXd feature_means;
    std::map<std::string, double> label_ratio;  // fraction of members per label
    std::string majority_label;
    double majority_ratio = 0.0;
};

// One partial cluster: the j-th cluster of the preimage of cover element
// `cover_index`. Members are indices into the original cloud.
struct MapperNode {
    int id = 0;
    std::size_t cover_index = 0;
    int cluster_index = 0;
    std::vector<int> members;  // sorted ascending
    NodeStats stats;
};

// The nerve of the partial clusters: nodes plus, per dimension d >= 1, the
// sorted node-id tuples whose member sets have a common point.
struct MapperNerve {
    std::vector<MapperNode> nodes;
    std::vector<std::vector<std::vector<int>>> simplices;  // [d-1] -> tuples of size d+1
    int nerve_dim = 1;

    const std::vector<std::vector<int>>& edges() const { return simplices.at(0); }
};

struct MapperParams {
    int n_intervals = 10;
    double overlap = 0.3;
    MapperClusterer clusterer = SingleLinkageGapClusterer{};
    int nerve_dim = 1;
    std::uint64_t seed = 0;
    Metric metric = Metric::euclidean;
};

inline NodeStats node_stats_for(const PointCloud& cloud, const std::vector<int>& members) {
    NodeStats stats;
    stats.count = members.size();
    stats.feature_means = Eigen::VectorXd::Zero(cloud.dim());
    for (const int i : members) stats.feature_means += cloud.points.row(i).transpose();
    if (!members.empty()) stats.feature_means /= static_cast<double>(members.size());
    if (cloud.has_labels() && !members.empty()) {
        std::map<std::string, std::size_t> counts;
        for (const int i : members) ++counts[cloud.labels[static_cast<std::size_t>(i)]];
        for (const auto& [label, count] : counts) {
            const double ratio = static_cast<double>(count) / static_cast<double>(members.size());
            stats.label_ratio[label] = ratio;
            if (ratio > stats.majority_ratio) {
                stats.majority_ratio = ratio;
                stats.majority_label = label;
            }
        }
    }
    return stats;
}

// Per-node member count, feature means, and label mix for a built nerve.
inline std::vector<NodeStats> node_stats(const MapperNerve& nerve, const PointCloud& cloud) {
    std::vector<NodeStats> stats;
    stats.reserve(nerve.nodes.size());
    for (const auto& node : nerve.nodes) stats.push_back(node_stats_for(cloud, node.members));
    return stats;
}

namespace detail {

inline std::vector<int> sorted_intersection(const std::vector<int>& a,
                                            const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

}  // namespace detail

// The Mapper pipeline: evaluate the lens, cover its image with overlapping
// intervals, cluster every nonempty preimage in the ambient metric of the
// original cloud, and connect partial clusters that share points. DBSCAN
// noise points form no node.
inline MapperNerve run_mapper(const PointCloud& cloud, const Lens& lens,
                              const MapperParams& params) {
    if (params.nerve_dim < 1) throw InvalidArgument("nerve_dim must be at least 1");
    if (cloud.size() < 1) throw InvalidArgument("mapper requires a nonempty cloud");
    const Eigen::MatrixXd values = evaluate_lens(cloud, lens);
    const Cover cover = build_cover(values, params.n_intervals, params.overlap);
    const DistanceMatrix dist = distance_matrix(cloud, params.metric);
    Rng rng(params.seed);

    MapperNerve nerve;
    nerve.nerve_dim = params.nerve_dim;
    for (std::size_t alpha = 0; alpha < cover.element_count(); ++alpha) {
        std::vector<int> preimage;
        for (Eigen::Index i = 0; i < values.rows(); ++i)
            if (cover.contains(alpha, values.row(i))) preimage.push_back(static_cast<int>(i));
        if (preimage.empty()) continue;

        ClusterAssignment clusters;
        try {
            if (const auto* sl = std::get_if<SingleLinkageGapClusterer>(&params.clusterer)) {
                clusters = cut_histogram_gap(single_linkage(dist.submatrix(preimage)), sl->bins);
            } else if (const auto* db = std::get_if<DbscanClusterer>(&params.clusterer)) {
                clusters = dbscan(dist.submatrix(preimage), db->eps, db->min_pts);
            } else {
                const auto& km = std::get<KMeansClusterer>(params.clusterer);
                PointCloud sub;
                sub.points.resize(static_cast<Eigen::Index>(preimage.size()), cloud.dim());
                for (std::size_t i = 0; i < preimage.size(); ++i)
                    sub.points.row(static_cast<Eigen::Index>(i)) = cloud.points.row(preimage[i]);
                KMeansParams kp;
                kp.k = km.k;
                kp.seed = rng.split(alpha).seed();
                clusters = kmeans(sub, kp).assignment;
            }
        } catch (const Error& e) {
            throw AlgorithmError("cover element " + std::to_string(alpha) + ": " + e.what());
        }

        for (int j = 0; j < clusters.k; ++j) {
            MapperNode node;
            node.id = static_cast<int>(nerve.nodes.size());
            node.cover_index = alpha;
            node.cluster_index = j;
            for (std::size_t i = 0; i < preimage.size(); ++i)
                if (clusters.labels[i] == j) node.members.push_back(preimage[i]);
            node.stats = node_stats_for(cloud, node.members);
            nerve.nodes.push_back(std::move(node));
        }
    }

    // nerve simplices: a tuple enters iff the members of all its nodes share
    // a point; grown dimension by dimension from the edges
    nerve.simplices.assign(static_cast<std::size_t>(params.nerve_dim),
                           std::vector<std::vector<int>>{});
    std::vector<std::vector<int>> intersections;  // running intersection per simplex
    const int n_nodes = static_cast<int>(nerve.nodes.size());
    for (int u = 0; u < n_nodes; ++u) {
        for (int v = u + 1; v < n_nodes; ++v) {
            auto common = detail::sorted_intersection(nerve.nodes[static_cast<std::size_t>(u)].members,
                                                      nerve.nodes[static_cast<std::size_t>(v)].members);
            if (common.empty()) continue;
            nerve.simplices[0].push_back({u, v});
            intersections.push_back(std::move(common));
        }
    }
    for (int d = 2; d <= params.nerve_dim; ++d) {
        std::vector<std::vector<int>> next_intersections;
        auto& out = nerve.simplices[static_cast<std::size_t>(d - 1)];
        const auto& prev = nerve.simplices[static_cast<std::size_t>(d - 2)];
        for (std::size_t s = 0; s < prev.size(); ++s) {
            for (int w = prev[s].back() + 1; w < n_nodes; ++w) {
                auto common = detail::sorted_intersection(
                    intersections[s], nerve.nodes[static_cast<std::size_t>(w)].members);
                if (common.empty()) continue;
                std::vector<int> tuple = prev[s];
                tuple.push_back(w);
                out.push_back(std::move(tuple));
                next_intersections.push_back(std::move(common));
            }
        }
        intersections = std::move(next_intersections);
    }
    return nerve;
}

// Count of weakly connected components of the 1-skeleton.
inline int connected_components(const MapperNerve& nerve) {
    const int n = static_cast<int>(nerve.nodes.size());
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    const auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    if (!nerve.simplices.empty())
        for (const auto& edge : nerve.edges())
            parent[static_cast<std::size_t>(find(edge[0]))] = find(edge[1]);
    int components = 0;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) ++components;
    return components;
}

inline nlohmann::json nerve_to_json(const MapperNerve& nerve) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& node : nerve.nodes) {
        nlohmann::json jn;
        jn["id"] = node.id;
        jn["cover_index"] = node.cover_index;
        jn["cluster_index"] = node.cluster_index;
        jn["size"] = node.members.size();
        jn["members"] = node.members;
        nlohmann::json stats;
        stats["count"] = node.stats.count;
        stats["feature_means"] = std::vector<double>(
            node.stats.feature_means.data(),
            node.stats.feature_means.data() + node.stats.feature_means.size());
        if (!node.stats.label_ratio.empty()) {
            stats["label_ratio"] = node.stats.label_ratio;
            stats["majority_label"] = node.stats.majority_label;
            stats["majority_ratio"] = node.stats.majority_ratio;
        }
        jn["stats"] = std::move(stats);
        j["nodes"].push_back(std::move(jn));
    }
    j["simplices"] = nlohmann::json::object();
    for (std::size_t d = 0; d < nerve.simplices.size(); ++d)
        j["simplices"][std::to_string(d + 1)] = nerve.simplices[d];
    return j;
}

namespace detail {

inline std::string ramp_color(double t) {
    // yellow (low) to blue (high)
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(255.0 * (1.0 - t)));
    const int g = r;
    const int b = static_cast<int>(std::lround(255.0 * t));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return std::string(buf);
}

}  // namespace detail

// 1-skeleton as Graphviz DOT. Node width scales with member count; fill
// color maps the coloring stat on a yellow-to-blue ramp. With labels present
// the stat is the fraction of members carrying the alphabetically first
// label of the whole cloud; otherwise it is the node mean of feature 0,
// normalized over the nodes.
inline std::string nerve_to_dot(const MapperNerve& nerve, const PointCloud& cloud) {
    std::size_t max_count = 1;
    for (const auto& node : nerve.nodes) max_count = std::max(max_count, node.stats.count);

    std::string ref_label;
    if (cloud.has_labels())
        ref_label = *std::min_element(cloud.labels.begin(), cloud.labels.end());

    std::vector<double> stat(nerve.nodes.size(), 0.0);
    if (cloud.has_labels()) {
        for (std::size_t i = 0; i < nerve.nodes.size(); ++i) {
            const auto it = nerve.nodes[i].stats.label_ratio.find(ref_label);
            stat[i] = it == nerve.nodes[i].stats.label_ratio.end() ? 0.0 : it->second;
        }
    } else if (!nerve.nodes.empty() && cloud.dim() > 0) {
        double lo = nerve.nodes.front().stats.feature_means(0);
        double hi = lo;
        for (const auto& node : nerve.nodes) {
            lo = std::min(lo, node.stats.feature_means(0));
            hi = std::max(hi, node.stats.feature_means(0));
        }
        for (std::size_t i = 0; i < nerve.nodes.size(); ++i)
            stat[i] = hi > lo ? (nerve.nodes[i].stats.feature_means(0) - lo) / (hi - lo) : 0.5;
    }

    std::string out = "graph nerve {\n  node [style=filled, shape=circle];\n";
    for (std::size_t i = 0; i < nerve.nodes.size(); ++i) {
        const auto& node = nerve.nodes[i];
        const double width =
            0.3 + 0.7 * std::sqrt(static_cast<double>(node.stats.count) /
                                  static_cast<double>(max_count));
        out += "  n" + std::to_string(node.id) + " [label=\"" + std::to_string(node.id) +
               " (" + std::to_string(node.stats.count) + ")\", width=" +
               format_double(width) + ", fillcolor=\"" + detail::ramp_color(stat[i]) +
               "\"];\n";
    }
    if (!nerve.simplices.empty())
        for (const auto& edge : nerve.edges())
            out += "  n" + std::to_string(edge[0]) + " -- n" + std::to_string(edge[1]) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace ripsmap
