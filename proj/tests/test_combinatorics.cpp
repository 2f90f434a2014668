#include <doctest.h>

#include <set>
#include <vector>

#include "commdet/combinatorics.hpp"
#include "commdet/errors.hpp"
#include "commdet/graph.hpp"

using namespace commdet;

TEST_CASE("labelled_tree_count: Cayley values") {
    CHECK(labelled_tree_count(1) == 1);
    CHECK(labelled_tree_count(2) == 1);
    CHECK(labelled_tree_count(3) == 3);
    CHECK(labelled_tree_count(6) == 1296);
    CHECK(to_string(labelled_tree_count(8)) == "262144");
}

TEST_CASE("prufer_decode produces trees, enumeration is exhaustive") {
    for (int l = 3; l <= 7; ++l) {
        std::set<std::vector<Graph::Edge>> seen;
        for_each_labelled_tree(l, [&](const std::vector<Graph::Edge>& edges) {
            CHECK(static_cast<int>(edges.size()) == l - 1);
            Graph g = Graph::from_edges(l, edges);
            auto fc = is_forest(g);
            CHECK(fc.is_forest);
            CHECK(components(g).sizes.size() == 1);
            seen.insert(g.edges());
        });
        CHECK(static_cast<uint128>(seen.size()) == labelled_tree_count(l));
    }
}

TEST_CASE("trees_containing_tree: identity k l^(l-k-1)") {
    CHECK(trees_containing_tree(1, 3) == 3);
    CHECK(trees_containing_tree(2, 4) == 8);
    CHECK(trees_containing_tree(3, 5) == 15);
    CHECK(trees_containing_tree(4, 4) == 1);

    SUBCASE("matches enumeration for several embedded shapes, l <= 7") {
        // embedded tree shapes on k vertices: a path 0-1-..-k-1 and a star at 0
        for (int l = 3; l <= 7; ++l) {
            for (int k = 2; k <= l; ++k) {
                std::vector<Graph::Edge> path, star;
                for (int e = 0; e + 1 < k; ++e) {
                    path.emplace_back(e, e + 1);
                    star.emplace_back(0, e + 1);
                }
                for (const auto& shape : {path, star}) {
                    long long count = 0;
                    for_each_labelled_tree(l, [&](const std::vector<Graph::Edge>& edges) {
                        std::set<Graph::Edge> es(edges.begin(), edges.end());
                        for (const auto& need : shape)
                            if (!es.count(need)) return;
                        ++count;
                    });
                    CHECK(static_cast<uint128>(count) == trees_containing_tree(k, l));
                }
            }
        }
    }
}

TEST_CASE("forest_counts: table structure") {
    auto t3 = forest_counts(3);
    CHECK(t3.counts == std::vector<uint128>{3, 3, 1});
    CHECK(forest_counts(4).counts[0] == 16);
    for (int k = 2; k <= 8; ++k) {
        auto t = forest_counts(k);
        CHECK(t.counts[0] == labelled_tree_count(k));
        CHECK(t.counts.back() == 1);
        for (std::size_t j = 0; j + 1 < t.counts.size(); ++j)
            CHECK(t.counts[j] >= t.counts[j + 1]);
        for (auto c : t.counts) CHECK(c <= labelled_tree_count(k));
    }
    CHECK_THROWS_AS(forest_counts(9), FeasibilityError);
}

TEST_CASE("extended Cayley bound for embedded forests") {
    // enumerate trees on l vertices containing a fixed forest whose components
    // are paths on consecutive blocks; exact count must respect the bound
    std::vector<std::vector<int>> partitions = {{2, 2}, {1, 2}, {2, 3}, {1, 1, 1}, {2, 2, 2},
                                                {3, 3}, {1, 1, 2}};
    for (int l = 4; l <= 7; ++l) {
        for (const auto& sizes : partitions) {
            int k = 0;
            for (int s : sizes) k += s;
            if (k > l) continue;
            int r = static_cast<int>(sizes.size());
            std::vector<Graph::Edge> forest;
            int base = 0;
            for (int s : sizes) {
                for (int e = 0; e + 1 < s; ++e) forest.emplace_back(base + e, base + e + 1);
                base += s;
            }
            long long count = 0;
            for_each_labelled_tree(l, [&](const std::vector<Graph::Edge>& edges) {
                std::set<Graph::Edge> es(edges.begin(), edges.end());
                for (const auto& need : forest)
                    if (!es.count(need)) return;
                ++count;
            });
            CHECK(static_cast<double>(count) <=
                  trees_containing_forest_bound(k, r, l) + 1e-6);
        }
    }
}
