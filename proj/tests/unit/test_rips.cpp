#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include <ripsmap/generators.hpp>
#include <ripsmap/rips.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ripsmap;

namespace {

std::set<std::vector<std::int32_t>> simplex_set(const Filtration& filtration) {
    std::set<std::vector<std::int32_t>> out;
    for (const auto& s : filtration.simplices) out.insert(s.vertices);
    return out;
}

std::map<std::vector<std::int32_t>, double> birth_map(const Filtration& filtration) {
    std::map<std::vector<std::int32_t>, double> out;
    for (const auto& s : filtration.simplices) out[s.vertices] = s.birth;
    return out;
}

}  // namespace

TEST_CASE("unit square filtration inventory") {
    const auto dist = distance_matrix(fixtures::unit_square_corners());
    const double root2 = std::sqrt(2.0);

    SECTION("dimension cap 2: 14 simplices") {
        const Filtration filtration = build_rips(dist, 2, 2.0);
        REQUIRE(filtration.simplices.size() == 14);
        int vertices = 0, side_edges = 0, diagonal_edges = 0, triangles = 0;
        for (const auto& s : filtration.simplices) {
            if (s.dim() == 0) {
                CHECK(s.birth == 0.0);
                ++vertices;
            } else if (s.dim() == 1 && s.birth == 1.0) {
                ++side_edges;
            } else if (s.dim() == 1 && s.birth == root2) {
                ++diagonal_edges;
            } else if (s.dim() == 2) {
                CHECK(s.birth == root2);
                ++triangles;
            }
        }
        CHECK(vertices == 4);
        CHECK(side_edges == 4);
        CHECK(diagonal_edges == 2);
        CHECK(triangles == 4);
    }
    SECTION("dimension cap 3 adds the solid tetrahedron") {
        const Filtration filtration = build_rips(dist, 3, 2.0);
        REQUIRE(filtration.simplices.size() == 15);
        const auto& top = filtration.simplices.back();
        CHECK(top.dim() == 3);
        CHECK(top.birth == root2);
        CHECK(top.vertices == std::vector<std::int32_t>{0, 1, 2, 3});
    }
    SECTION("threshold below the minimum distance keeps only vertices") {
        const Filtration filtration = build_rips(dist, 2, 0.5);
        REQUIRE(filtration.simplices.size() == 4);
        for (const auto& s : filtration.simplices) CHECK(s.dim() == 0);
    }
}

TEST_CASE("filtration order is canonical and face-closed") {
    Rng rng(3);
    const auto dist = distance_matrix(fixtures::random_cloud(12, 2, rng, 2.0));
    const Filtration filtration = build_rips(dist, 3, 1.2);

    SECTION("total order: birth, then dimension, then lexicographic") {
        for (std::size_t j = 1; j < filtration.simplices.size(); ++j) {
            const auto& a = filtration.simplices[j - 1];
            const auto& b = filtration.simplices[j];
            const auto key = [](const Simplex& s) {
                return std::make_tuple(s.birth, s.vertices.size(), s.vertices);
            };
            CHECK(key(a) < key(b));
        }
    }
    SECTION("every facet appears earlier with smaller-or-equal birth") {
        std::map<std::vector<std::int32_t>, std::size_t> position;
        for (std::size_t j = 0; j < filtration.simplices.size(); ++j)
            position[filtration.simplices[j].vertices] = j;
        for (std::size_t j = 0; j < filtration.simplices.size(); ++j) {
            const auto& s = filtration.simplices[j];
            if (s.dim() == 0) continue;
            for (std::size_t omit = 0; omit < s.vertices.size(); ++omit) {
                std::vector<std::int32_t> facet;
                for (std::size_t i = 0; i < s.vertices.size(); ++i)
                    if (i != omit) facet.push_back(s.vertices[i]);
                REQUIRE(position.count(facet) == 1);
                const std::size_t fpos = position[facet];
                CHECK(fpos < j);
                CHECK(filtration.simplices[fpos].birth <= s.birth);
            }
        }
    }
    SECTION("birth equals the exact maximum edge length") {
        for (const auto& s : filtration.simplices) {
            CHECK(s.birth == oracles::diameter_of(dist, s.vertices));
        }
    }
}

TEST_CASE("brute-force enumeration equivalence up to n = 12") {
    for (const std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
        Rng rng(seed + 50);
        const Eigen::Index n = 6 + static_cast<Eigen::Index>(rng.below(7));  // 6..12
        const auto dist = distance_matrix(fixtures::random_cloud(n, 3, rng, 1.5));
        for (const double max_eps : {0.4, 0.8, 1.4}) {
            for (const int max_dim : {1, 2, 3}) {
                const Filtration filtration = build_rips(dist, max_dim, max_eps);
                std::set<std::vector<std::int32_t>> expected;
                for (auto& s : oracles::brute_force_complex(dist, max_dim, max_eps))
                    expected.insert(std::move(s));
                CHECK(simplex_set(filtration) == expected);
            }
        }
    }
}

TEST_CASE("monotone nesting in the threshold") {
    Rng rng(7);
    const auto dist = distance_matrix(fixtures::random_cloud(10, 2, rng, 2.0));
    const std::vector<double> thresholds{0.3, 0.7, 1.1, 1.6, 2.4};
    std::set<std::vector<std::int32_t>> previous;
    for (const double eps : thresholds) {
        const auto current = simplex_set(build_rips(dist, 2, eps));
        CHECK(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
        previous = current;
    }
    // births never change across thresholds, simplices only appear
    const auto births_small = birth_map(build_rips(dist, 2, 1.1));
    const auto births_large = birth_map(build_rips(dist, 2, 2.4));
    for (const auto& [vertices, birth] : births_small) {
        REQUIRE(births_large.count(vertices) == 1);
        CHECK(births_large.at(vertices) == birth);
    }
}

TEST_CASE("simplex budget") {
    const PointCloud cloud = two_squares(4);
    const auto dist = distance_matrix(cloud);
    CHECK_THROWS_AS(build_rips(dist, 2, 6.2, 1000), BudgetExceeded);
    try {
        build_rips(dist, 2, 6.2, 1000);
    } catch (const BudgetExceeded& e) {
        CHECK(e.count_reached >= 1000);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("1000"));
    }
}

TEST_CASE("build_rips argument validation") {
    const auto dist = distance_matrix(fixtures::line_cloud({0, 1}));
    CHECK_THROWS_AS(build_rips(dist, -1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_rips(dist, 2, 0.0), InvalidArgument);
}

TEST_CASE("filtration debug export") {
    const auto dist = distance_matrix(fixtures::line_cloud({0, 1}));
    const Filtration filtration = build_rips(dist, 1, 2.0);
    CHECK(filtration_to_text(filtration) == "0 0 0\n0 0 1\n1 1 0 1\n");
}
