#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include <ripsmap/generators.hpp>
#include <ripsmap/mapper.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ripsmap;

namespace {

// every member set intersection tested pairwise (and for triples), straight
// from the definition
void check_nerve_against_brute_force(const MapperNerve& nerve) {
    const int n = static_cast<int>(nerve.nodes.size());
    std::set<std::vector<int>> edges(nerve.edges().begin(), nerve.edges().end());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            std::vector<int> common;
            std::set_intersection(nerve.nodes[static_cast<std::size_t>(u)].members.begin(),
                                  nerve.nodes[static_cast<std::size_t>(u)].members.end(),
                                  nerve.nodes[static_cast<std::size_t>(v)].members.begin(),
                                  nerve.nodes[static_cast<std::size_t>(v)].members.end(),
                                  std::back_inserter(common));
            CHECK(edges.count({u, v}) == (common.empty() ? 0u : 1u));
        }
    }
    if (nerve.nerve_dim < 2) return;
    std::set<std::vector<int>> triangles(nerve.simplices[1].begin(), nerve.simplices[1].end());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                std::vector<int> ab, abc;
                std::set_intersection(nerve.nodes[static_cast<std::size_t>(a)].members.begin(),
                                      nerve.nodes[static_cast<std::size_t>(a)].members.end(),
                                      nerve.nodes[static_cast<std::size_t>(b)].members.begin(),
                                      nerve.nodes[static_cast<std::size_t>(b)].members.end(),
                                      std::back_inserter(ab));
                std::set_intersection(ab.begin(), ab.end(),
                                      nerve.nodes[static_cast<std::size_t>(c)].members.begin(),
                                      nerve.nodes[static_cast<std::size_t>(c)].members.end(),
                                      std::back_inserter(abc));
                CHECK(triangles.count({a, b, c}) == (abc.empty() ? 0u : 1u));
            }
}

}  // namespace

TEST_CASE("evaluate_lens") {
    SECTION("coordinate lens copies a column") {
        const PointCloud cloud = fixtures::unit_square_corners();
        const Eigen::MatrixXd values = evaluate_lens(cloud, Lens::coordinate(0));
        REQUIRE(values.rows() == 4);
        CHECK(values(0, 0) == 0.0);
        CHECK(values(1, 0) == 1.0);
        CHECK(values(2, 0) == 1.0);
        CHECK(values(3, 0) == 0.0);
        CHECK_THROWS_AS(evaluate_lens(cloud, Lens::coordinate(2)), InvalidArgument);
    }
    SECTION("pca lens orders components by variance") {
        const PointCloud cloud = fixtures::iris_analog(3);
        const Eigen::MatrixXd values = evaluate_lens(cloud, Lens::pca(2));
        REQUIRE(values.rows() == cloud.size());
        REQUIRE(values.cols() == 2);
        const double var1 = values.col(0).squaredNorm();
        const double var2 = values.col(1).squaredNorm();
        CHECK(var1 >= var2);
    }
    SECTION("external lens validates the row count") {
        const PointCloud cloud = fixtures::unit_square_corners();
        Eigen::MatrixXd wrong(3, 1);
        wrong << 1, 2, 3;
        CHECK_THROWS_AS(evaluate_lens(cloud, Lens::external(wrong)), InvalidArgument);
        Eigen::MatrixXd right(4, 1);
        right << 1, 2, 3, 4;
        CHECK(evaluate_lens(cloud, Lens::external(right)) == right);
    }
}

TEST_CASE("build_cover") {
    SECTION("zero overlap partitions the range") {
        Eigen::MatrixXd values(2, 1);
        values << 0.0, 10.0;
        const Cover cover = build_cover(values, 5, 0.0);
        REQUIRE(cover.axes.size() == 1);
        REQUIRE(cover.axes[0].size() == 5);
        const std::vector<std::pair<double, double>> expected{
            {0, 2}, {2, 4}, {4, 6}, {6, 8}, {8, 10}};
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(cover.axes[0][i].lo == expected[i].first);
            CHECK(cover.axes[0][i].hi == expected[i].second);
        }
    }
    SECTION("half overlap stretches and clips") {
        Eigen::MatrixXd values(2, 1);
        values << 0.0, 10.0;
        const Cover cover = build_cover(values, 5, 0.5);
        const std::vector<std::pair<double, double>> expected{
            {0, 3}, {2, 5}, {4, 7}, {6, 9}, {8, 10}};
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(cover.axes[0][i].lo == Catch::Approx(expected[i].first));
            CHECK(cover.axes[0][i].hi == Catch::Approx(expected[i].second));
        }
        // interior values fall in at most two intervals
        for (double v = 0.05; v < 10.0; v += 0.1) {
            int hits = 0;
            for (const auto& interval : cover.axes[0])
                if (interval.contains(v)) ++hits;
            CHECK(hits >= 1);
            CHECK(hits <= 2);
        }
    }
    SECTION("constant values give one degenerate interval") {
        Eigen::MatrixXd values(3, 1);
        values << 4.0, 4.0, 4.0;
        const Cover cover = build_cover(values, 7, 0.3);
        REQUIRE(cover.axes[0].size() == 1);
        CHECK(cover.axes[0][0].contains(4.0));
    }
    SECTION("argument validation") {
        Eigen::MatrixXd values(2, 1);
        values << 0.0, 1.0;
        CHECK_THROWS_AS(build_cover(values, 0, 0.3), InvalidArgument);
        CHECK_THROWS_AS(build_cover(values, 5, 1.0), InvalidArgument);
        CHECK_THROWS_AS(build_cover(values, 5, -0.1), InvalidArgument);
        CHECK_THROWS_AS(build_cover(Eigen::MatrixXd(0, 1), 5, 0.3), InvalidArgument);
    }
}

TEST_CASE("cover membership is total") {
    Rng rng(15);
    const PointCloud cloud = fixtures::random_cloud(120, 2, rng, 6.0);
    const Eigen::MatrixXd values = evaluate_lens(cloud, Lens::coordinate(0));
    for (const double overlap : {0.0, 0.3, 0.6}) {
        const Cover cover = build_cover(values, 8, overlap);
        int in_two_or_more = 0;
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            int hits = 0;
            for (std::size_t alpha = 0; alpha < cover.element_count(); ++alpha)
                if (cover.contains(alpha, values.row(i))) ++hits;
            CHECK(hits >= 1);
            if (hits >= 2) ++in_two_or_more;
        }
        if (overlap > 0.0) CHECK(in_two_or_more > 0);
    }
}

TEST_CASE("run_mapper on the two squares") {
    const PointCloud cloud = two_squares(2);
    MapperParams params;
    params.n_intervals = 4;
    params.overlap = 0.3;
    const MapperNerve nerve = run_mapper(cloud, Lens::coordinate(0), params);

    CHECK(connected_components(nerve) == 2);
    for (const auto& node : nerve.nodes) {
        REQUIRE_FALSE(node.members.empty());
        // nodes never mix the squares
        CHECK(node.stats.label_ratio.size() == 1);
        CHECK(node.stats.majority_ratio == 1.0);
    }
    check_nerve_against_brute_force(nerve);
}

TEST_CASE("trivial cover and clustering give one node") {
    const PointCloud cloud = fixtures::unit_square_corners();
    MapperParams params;
    params.n_intervals = 1;
    params.overlap = 0.0;
    params.clusterer = KMeansClusterer{1};
    const MapperNerve nerve = run_mapper(cloud, Lens::coordinate(0), params);
    REQUIRE(nerve.nodes.size() == 1);
    CHECK(nerve.nodes[0].members == std::vector<int>{0, 1, 2, 3});
    CHECK(nerve.edges().empty());
    CHECK(connected_components(nerve) == 1);
}

TEST_CASE("node membership partitions each preimage") {
    Rng rng(25);
    const PointCloud cloud = fixtures::random_cloud(90, 2, rng, 5.0);
    MapperParams params;
    params.n_intervals = 6;
    params.overlap = 0.4;
    const MapperNerve nerve = run_mapper(cloud, Lens::coordinate(1), params);
    const Eigen::MatrixXd values = evaluate_lens(cloud, Lens::coordinate(1));
    const Cover cover = build_cover(values, params.n_intervals, params.overlap);

    for (std::size_t alpha = 0; alpha < cover.element_count(); ++alpha) {
        std::vector<int> preimage;
        for (Eigen::Index i = 0; i < values.rows(); ++i)
            if (cover.contains(alpha, values.row(i))) preimage.push_back(static_cast<int>(i));
        std::vector<int> from_nodes;
        for (const auto& node : nerve.nodes) {
            if (node.cover_index != alpha) continue;
            for (const int member : node.members) from_nodes.push_back(member);
        }
        std::sort(from_nodes.begin(), from_nodes.end());
        // single-linkage leaves no noise: union of nodes == preimage
        CHECK(from_nodes == preimage);
        const std::set<int> unique(from_nodes.begin(), from_nodes.end());
        CHECK(unique.size() == from_nodes.size());
    }
    check_nerve_against_brute_force(nerve);
}

TEST_CASE("dbscan noise points form no node") {
    // three tight bundles plus one far outlier inside the same cover element
    PointCloud cloud = fixtures::line_cloud(
        {0.0, 0.05, 0.1, 5.0, 5.05, 5.1, 100.0});
    MapperParams params;
    params.n_intervals = 1;
    params.overlap = 0.0;
    params.clusterer = DbscanClusterer{0.2, 2};
    const MapperNerve nerve = run_mapper(cloud, Lens::coordinate(0), params);
    REQUIRE(nerve.nodes.size() == 2);
    std::set<int> covered;
    for (const auto& node : nerve.nodes)
        covered.insert(node.members.begin(), node.members.end());
    CHECK(covered == std::set<int>{0, 1, 2, 3, 4, 5});  // outlier 6 dropped
}

TEST_CASE("higher nerve dimensions from common intersections") {
    // force three nodes sharing one point by a heavily overlapping cover
    PointCloud cloud = fixtures::line_cloud({0.0, 0.45, 0.5, 0.55, 1.0});
    MapperParams params;
    params.n_intervals = 3;
    params.overlap = 0.8;
    params.nerve_dim = 2;
    params.clusterer = SingleLinkageGapClusterer{};
    const MapperNerve nerve = run_mapper(cloud, Lens::coordinate(0), params);
    check_nerve_against_brute_force(nerve);
    // face closure: every edge of a triangle is present
    std::set<std::vector<int>> edges(nerve.edges().begin(), nerve.edges().end());
    for (const auto& tri : nerve.simplices[1]) {
        CHECK(edges.count({tri[0], tri[1]}) == 1);
        CHECK(edges.count({tri[0], tri[2]}) == 1);
        CHECK(edges.count({tri[1], tri[2]}) == 1);
    }
}

TEST_CASE("refining the cover never loses nodes") {
    const PointCloud squares = two_squares(8);
    const PointCloud circles = two_circles(8, 120, 240);
    for (const PointCloud* cloud : {&squares, &circles}) {
        MapperParams coarse;
        coarse.n_intervals = 4;
        coarse.overlap = 0.3;
        MapperParams fine = coarse;
        fine.n_intervals = 8;
        const auto before = run_mapper(*cloud, Lens::coordinate(0), coarse);
        const auto after = run_mapper(*cloud, Lens::coordinate(0), fine);
        CHECK(after.nodes.size() >= before.nodes.size());
    }
}

TEST_CASE("mapper runs are deterministic") {
    const PointCloud cloud = two_circles(5, 100, 200);
    MapperParams params;
    params.n_intervals = 6;
    params.overlap = 0.3;
    params.clusterer = KMeansClusterer{2};
    params.seed = 17;
    const MapperNerve a = run_mapper(cloud, Lens::coordinate(0), params);
    const MapperNerve b = run_mapper(cloud, Lens::coordinate(0), params);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].id == b.nodes[i].id);
        CHECK(a.nodes[i].cover_index == b.nodes[i].cover_index);
        CHECK(a.nodes[i].members == b.nodes[i].members);
    }
    CHECK(a.simplices == b.simplices);
}

TEST_CASE("node_stats") {
    SECTION("pure and mixed label ratios") {
        PointCloud cloud = fixtures::line_cloud({0, 1, 2, 3});
        cloud.labels = {"outer", "outer", "outer", "inner"};
        MapperNerve nerve;
        MapperNode pure;
        pure.members = {0, 1, 2};
        MapperNode mixed;
        mixed.members = {0, 1, 2, 3};
        nerve.nodes = {pure, mixed};
        const auto stats = node_stats(nerve, cloud);
        CHECK(stats[0].label_ratio.at("outer") == 1.0);
        CHECK(stats[0].majority_label == "outer");
        CHECK(stats[1].label_ratio.at("outer") == 0.75);
        CHECK(stats[1].label_ratio.at("inner") == 0.25);
        CHECK(stats[1].majority_ratio == 0.75);
    }
    SECTION("feature means stay inside the source squares") {
        const PointCloud cloud = two_squares(12);
        MapperParams params;
        params.n_intervals = 4;
        params.overlap = 0.3;
        const MapperNerve nerve = run_mapper(cloud, Lens::coordinate(0), params);
        for (const auto& node : nerve.nodes) {
            const double x = node.stats.feature_means(0);
            const double y = node.stats.feature_means(1);
            const bool in_first = x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0;
            const bool in_second = x >= 5.0 && x <= 6.0 && y >= 5.0 && y <= 6.0;
            CHECK((in_first || in_second));
        }
    }
}

TEST_CASE("nerve exports") {
    const PointCloud cloud = two_squares(2);
    MapperParams params;
    params.n_intervals = 4;
    params.overlap = 0.3;
    const MapperNerve nerve = run_mapper(cloud, Lens::coordinate(0), params);

    SECTION("json schema") {
        const nlohmann::json j = nerve_to_json(nerve);
        REQUIRE(j.contains("nodes"));
        REQUIRE(j.contains("simplices"));
        CHECK(j["nodes"].size() == nerve.nodes.size());
        const auto& first = j["nodes"][0];
        for (const char* key : {"id", "cover_index", "cluster_index", "size", "members", "stats"})
            CHECK(first.contains(key));
        CHECK(j["simplices"].contains("1"));
    }
    SECTION("dot output lists every node and edge") {
        const std::string dot = nerve_to_dot(nerve, cloud);
        CHECK_THAT(dot, Catch::Matchers::StartsWith("graph nerve {"));
        for (const auto& node : nerve.nodes)
            CHECK_THAT(dot, Catch::Matchers::ContainsSubstring(
                                "n" + std::to_string(node.id) + " ["));
        CHECK_THAT(dot, Catch::Matchers::ContainsSubstring("fillcolor=\"#"));
    }
}

TEST_CASE("mapper input validation") {
    const PointCloud cloud = fixtures::unit_square_corners();
    MapperParams params;
    params.nerve_dim = 0;
    CHECK_THROWS_AS(run_mapper(cloud, Lens::coordinate(0), params), InvalidArgument);
    MapperParams bad_cluster;
    bad_cluster.clusterer = KMeansClusterer{10};  // k > preimage size
    CHECK_THROWS_AS(run_mapper(cloud, Lens::coordinate(0), bad_cluster), AlgorithmError);
}
