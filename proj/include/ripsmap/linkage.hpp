#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <variant>
#include <vector>

#include "cluster.hpp"
#include "errors.hpp"
#include "point_cloud.hpp"

namespace ripsmap {

// Agglomerative merge tree. Leaves are 0..n_leaves-1; the t-th merge joins
// clusters a and b (each a leaf index or n_leaves + earlier merge index) and
// creates cluster n_leaves + t. Heights are non-decreasing.
struct Dendrogram {
    struct Merge {
        int a = 0;
        int b = 0;
        double height = 0.0;
    };
    std::vector<Merge> merges;
    int n_leaves = 0;
    // largest pairwise distance of the clustered set, when known; used as
    // the histogram range for the gap cut
    std::optional<double> scale;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        int root = x;
        while (parent_[static_cast<std::size_t>(root)] != root)
            root = parent_[static_cast<std::size_t>(root)];
        while (parent_[static_cast<std::size_t>(x)] != root) {
            const int next = parent_[static_cast<std::size_t>(x)];
            parent_[static_cast<std::size_t>(x)] = root;
            x = next;
        }
        return root;
    }

    // Attach b's root under a's root.
    void unite(int a, int b) { parent_[static_cast<std::size_t>(find(b))] = find(a); }

private:
    std::vector<int> parent_;
};

// Contiguous labels ordered by each cluster's smallest member.
inline ClusterAssignment labels_from_components(std::vector<int> roots) {
    const int n = static_cast<int>(roots.size());
    std::vector<int> order;
    std::vector<int> label_of(static_cast<std::size_t>(n), -1);
    ClusterAssignment out;
    out.labels.resize(static_cast<std::size_t>(n));
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int r = roots[static_cast<std::size_t>(i)];
        if (label_of[static_cast<std::size_t>(r)] < 0)
            label_of[static_cast<std::size_t>(r)] = next++;
        out.labels[static_cast<std::size_t>(i)] = label_of[static_cast<std::size_t>(r)];
    }
    out.k = next;
    return out;
}

}  // namespace detail

// Single-linkage clustering: inter-cluster distance is the minimum pairwise
// distance, so the merge heights are exactly the sorted edge weights of a
// minimum spanning tree of the complete distance graph. The MST is built
// with Prim's algorithm on the dense matrix.
inline Dendrogram single_linkage(const DistanceMatrix& dist) {
    const int n = static_cast<int>(dist.size());
    if (n < 1) throw InvalidArgument("single_linkage requires at least one point");
    Dendrogram dendro;
    dendro.n_leaves = n;
    dendro.scale = dist.max_entry();
    if (n == 1) return dendro;

    // Prim from vertex 0; ties resolved toward the lowest vertex index
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    std::vector<double> best(static_cast<std::size_t>(n),
                             std::numeric_limits<double>::infinity());
    std::vector<int> best_from(static_cast<std::size_t>(n), 0);
    in_tree[0] = 1;
    for (int j = 1; j < n; ++j) {
        best[static_cast<std::size_t>(j)] = dist(0, j);
        best_from[static_cast<std::size_t>(j)] = 0;
    }
    struct Edge {
        int u, v;
        double w;
    };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n - 1));
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        for (int j = 0; j < n; ++j) {
            if (in_tree[static_cast<std::size_t>(j)]) continue;
            if (pick < 0 || best[static_cast<std::size_t>(j)] < best[static_cast<std::size_t>(pick)])
                pick = j;
        }
        edges.push_back({best_from[static_cast<std::size_t>(pick)], pick,
                         best[static_cast<std::size_t>(pick)]});
        in_tree[static_cast<std::size_t>(pick)] = 1;
        for (int j = 0; j < n; ++j) {
            if (in_tree[static_cast<std::size_t>(j)]) continue;
            const double w = dist(pick, j);
            if (w < best[static_cast<std::size_t>(j)]) {
                best[static_cast<std::size_t>(j)] = w;
                best_from[static_cast<std::size_t>(j)] = pick;
            }
        }
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return a.w < b.w; });

    // replay the merges, tracking the current cluster id of each root
    detail::UnionFind uf(n);
    std::vector<int> cluster_id(static_cast<std::size_t>(n));
    std::iota(cluster_id.begin(), cluster_id.end(), 0);
    for (int t = 0; t < n - 1; ++t) {
        const Edge& e = edges[static_cast<std::size_t>(t)];
        const int ra = uf.find(e.u);
        const int rb = uf.find(e.v);
        int ca = cluster_id[static_cast<std::size_t>(ra)];
        int cb = cluster_id[static_cast<std::size_t>(rb)];
        if (ca > cb) std::swap(ca, cb);
        dendro.merges.push_back({ca, cb, e.w});
        uf.unite(ra, rb);
        cluster_id[static_cast<std::size_t>(uf.find(ra))] = n + t;
    }
    return dendro;
}

// Cut strategies for flattening a dendrogram.
struct FixedCountCut {
    int k = 1;
};
struct HeightCut {
    double height = 0.0;
};
// Bin the merge heights into equal-width bins over [0, scale] (scale = the
// dendrogram's recorded diameter when available, else the largest merge
// height), find the first empty bin after the first populated one, and undo
// every merge above its lower edge. No empty bin keeps all merges.
struct HistogramGapCut {
    int bins = 10;
};
using CutStrategy = std::variant<FixedCountCut, HeightCut, HistogramGapCut>;

namespace detail {

inline ClusterAssignment apply_merges(const Dendrogram& d, std::size_t count) {
    UnionFind uf(d.n_leaves);
    // merge t always joins two clusters whose representative leaves can be
    // tracked through the union-find
    std::vector<int> rep(static_cast<std::size_t>(d.n_leaves) * 2 - 1, -1);
    for (int i = 0; i < d.n_leaves; ++i) rep[static_cast<std::size_t>(i)] = i;
    for (std::size_t t = 0; t < d.merges.size(); ++t) {
        const auto& m = d.merges[t];
        const int la = rep[static_cast<std::size_t>(m.a)];
        const int lb = rep[static_cast<std::size_t>(m.b)];
        if (t < count) uf.unite(la, lb);
        rep[static_cast<std::size_t>(d.n_leaves) + t] = la;
    }
    std::vector<int> roots(static_cast<std::size_t>(d.n_leaves));
    for (int i = 0; i < d.n_leaves; ++i) roots[static_cast<std::size_t>(i)] = uf.find(i);
    return labels_from_components(std::move(roots));
}

}  // namespace detail

inline ClusterAssignment cut_fixed_count(const Dendrogram& d, int k) {
    if (k < 1 || k > d.n_leaves)
        throw InvalidArgument("invalid-k: need 1 <= k <= n_leaves");
    return detail::apply_merges(d, static_cast<std::size_t>(d.n_leaves - k));
}

inline ClusterAssignment cut_height(const Dendrogram& d, double height) {
    if (height < 0.0) throw InvalidArgument("negative-height");
    std::size_t keep = 0;
    while (keep < d.merges.size() && d.merges[keep].height <= height) ++keep;
    return detail::apply_merges(d, keep);
}

inline ClusterAssignment cut_histogram_gap(const Dendrogram& d, int bins = 10) {
    if (bins < 1) throw InvalidArgument("bins must be positive");
    if (d.merges.empty()) return detail::apply_merges(d, 0);
    double top = 0.0;
    for (const auto& m : d.merges) top = std::max(top, m.height);
    if (d.scale) top = std::max(top, *d.scale);
    if (top <= 0.0) return detail::apply_merges(d, d.merges.size());

    const double width = top / bins;
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (const auto& m : d.merges) {
        int bin = static_cast<int>(m.height / width);
        bin = std::clamp(bin, 0, bins - 1);
        ++counts[static_cast<std::size_t>(bin)];
    }
    bool seen = false;
    double cut = -1.0;
    for (int i = 0; i < bins; ++i) {
        if (counts[static_cast<std::size_t>(i)] > 0) {
            seen = true;
        } else if (seen) {
            cut = width * i;
            break;
        }
    }
    if (cut < 0.0) return detail::apply_merges(d, d.merges.size());
    std::size_t keep = 0;
    while (keep < d.merges.size() && d.merges[keep].height <= cut) ++keep;
    return detail::apply_merges(d, keep);
}

inline ClusterAssignment cut_dendrogram(const Dendrogram& d, const CutStrategy& strategy) {
    return std::visit(
        [&](const auto& s) -> ClusterAssignment {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FixedCountCut>)
                return cut_fixed_count(d, s.k);
            else if constexpr (std::is_same_v<T, HeightCut>)
                return cut_height(d, s.height);
            else
                return cut_histogram_gap(d, s.bins);
        },
        strategy);
}

}  // namespace ripsmap
