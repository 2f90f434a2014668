#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "commdet/analytic.hpp"
#include "commdet/errors.hpp"
#include "commdet/generate.hpp"
#include "commdet/rng.hpp"
#include "commdet/statistics.hpp"
#include "commdet/verify.hpp"

using namespace commdet;
using doctest::Approx;

namespace {

Graph complete_graph(int n) {
    std::vector<Graph::Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph::from_edges(n, std::move(es));
}

Graph path_graph(int n) {
    std::vector<Graph::Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::move(es));
}

}  // namespace

TEST_CASE("total_degree and edges_within") {
    CHECK(total_degree(Graph::from_edges(4, {})) == 0);
    CHECK(total_degree(complete_graph(5)) == 10);
    CHECK(total_degree(path_graph(7)) == 6);

    Graph k4 = complete_graph(4);
    CHECK(edges_within(k4, {}) == 0);
    CHECK(edges_within(k4, {2}) == 0);
    CHECK(edges_within(k4, {0, 1, 3}) == 3);
    Graph two_tri = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(edges_within(two_tri, {0, 1, 2}) == 3);
    CHECK_THROWS_AS(edges_within(k4, {0, 9}), std::invalid_argument);
}

TEST_CASE("scan: small exact cases") {
    Graph k4 = complete_graph(4);
    auto r = scan(k4, 2, ScanMode::exact);
    CHECK(r.value == 1);
    CHECK(r.exact);

    SUBCASE("planted clique among isolated vertices") {
        std::vector<Graph::Edge> es;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) es.emplace_back(i, j);
        Graph g = Graph::from_edges(15, std::move(es));
        auto res = scan(g, 5, ScanMode::exact);
        CHECK(res.value == 10);
        CHECK(res.witness == std::vector<int>{0, 1, 2, 3, 4});
    }
    SUBCASE("witness value is consistent in every mode") {
        Graph g = gen_er(25, 0.2, 99);
        for (auto mode : {ScanMode::exact, ScanMode::greedy, ScanMode::component}) {
            auto res = scan(g, 6, mode);
            CHECK(res.value == edges_within(g, res.witness));
            CHECK(static_cast<int>(res.witness.size()) == 6);
        }
    }
    SUBCASE("k = N returns the total degree") {
        Graph g = gen_er(15, 0.3, 5);
        CHECK(scan(g, 15, ScanMode::exact).value == total_degree(g));
    }
}

TEST_CASE("scan: exact equals brute force, heuristics stay below") {
    for (int rep = 0; rep < 12; ++rep) {
        Graph g = gen_er(20, 0.2, derive_seed(321, rep));
        for (int k : {3, 4, 6}) {
            long long oracle = brute_force_scan(g, k);
            auto ex = scan(g, k, ScanMode::exact);
            auto gr = scan(g, k, ScanMode::greedy);
            auto co = scan(g, k, ScanMode::component);
            CHECK(ex.value == oracle);
            CHECK(gr.value <= ex.value);
            CHECK(co.value <= gr.value);
        }
    }
}

TEST_CASE("scan: feasibility cap and overrides") {
    Graph g = gen_er(60, 0.05, 7);
    CHECK_THROWS_AS(scan(g, 6, ScanMode::exact), FeasibilityError);
    CHECK(scan(g, 3, ScanMode::exact).exact);  // k <= 3 stays closed-form
    ScanOptions wide;
    wide.exact_vertex_cap = 60;
    CHECK(scan(g, 6, ScanMode::exact, wide).exact);
    SUBCASE("node budget stops runaway searches") {
        ScanOptions strangled;
        strangled.exact_vertex_cap = 40;
        strangled.node_budget = 50;
        Graph dense = gen_er(40, 0.5, 8);
        CHECK_THROWS_AS(scan(dense, 10, ScanMode::exact, strangled), FeasibilityError);
    }
}

TEST_CASE("broad_scan: range and density maxima") {
    SUBCASE("triangle plus isolated vertices") {
        Graph g = Graph::from_edges(9, {{0, 1}, {1, 2}, {0, 2}});
        auto r = broad_scan(g, 3, ScanMode::exact);
        CHECK(r.value == Approx(1.0));
        CHECK(r.best_k == 3);
    }
    SUBCASE("complete graph density (m-1)/2") {
        Graph km = complete_graph(8);
        auto r = broad_scan(km, 8, ScanMode::exact);
        CHECK(r.value == Approx(3.5));
        CHECK(r.best_k == 8);
    }
    SUBCASE("window floor keeps at least two candidate sizes") {
        auto [lo, hi] = broad_scan_range(1000, 10);
        CHECK(lo == 5);  // u = max(log log 100, 2) = 2
        CHECK(hi == 10);
        auto [lo2, hi2] = broad_scan_range(10, 10);  // N = n degenerates
        CHECK(lo2 == 5);
        CHECK(hi2 == 10);
    }
    SUBCASE("exact mode equals brute force at small N") {
        for (int rep = 0; rep < 6; ++rep) {
            Graph g = gen_er(16, 0.25, derive_seed(654, rep));
            auto r = broad_scan(g, 8, ScanMode::exact);
            CHECK(r.value == Approx(brute_force_broad_scan(g, 8)).epsilon(1e-12));
        }
    }
    SUBCASE("planted instance at N=60 with a raised cap") {
        // C(60,k) enumeration is out of reach, so the checks are internal
        // consistency: the exact optimum dominates the planted community's
        // density at the same k, and the heuristic modes stay below exact.
        auto inst = gen_planted(60, 0.02, 12, 0.5, 1234);
        ScanOptions wide;
        wide.exact_vertex_cap = 60;
        auto r = broad_scan(inst.graph, 12, ScanMode::exact, wide);
        auto heur = broad_scan(inst.graph, 12, ScanMode::greedy, wide);
        CHECK(heur.value <= r.value + 1e-12);
        auto [lo, hi] = broad_scan_range(60, 12);
        for (int k = lo; k <= hi; ++k) {
            // best within-community subset of size k, greedy on the community
            Graph gs = induced(inst.graph, inst.community);
            auto inside = scan(gs, k, ScanMode::greedy);
            CHECK(r.value >= static_cast<double>(inside.value) / k - 1e-12);
        }
    }
}

TEST_CASE("triangles") {
    CHECK(triangles(complete_graph(4)) == 4);
    std::vector<Graph::Edge> c5;
    for (int i = 0; i < 5; ++i) c5.emplace_back(i, (i + 1) % 5);
    std::sort(c5.begin(), c5.end());
    for (auto& [a, b] : c5)
        if (a > b) std::swap(a, b);
    CHECK(triangles(Graph::from_edges(5, std::move(c5))) == 0);
    CHECK(triangles(complete_graph(6)) == 20);

    SUBCASE("sparse mean matches C(N,3) p^3") {
        const int N = 2000, R = 4000;
        const double p = 1.0 / N;
        double sum = 0.0, sum2 = 0.0;
        for (int r = 0; r < R; ++r) {
            auto t = static_cast<double>(triangles(gen_er(N, p, derive_seed(777, r))));
            sum += t;
            sum2 += t * t;
        }
        double mean = sum / R;
        double sd = std::sqrt((sum2 / R - mean * mean) * R / (R - 1.0));
        double target = static_cast<double>(N) * (N - 1) * (N - 2) / 6.0 * p * p * p;
        CHECK(std::abs(mean - target) <= 3.0 * sd / std::sqrt(static_cast<double>(R)));
    }
}

TEST_CASE("ktree_count") {
    CHECK(ktree_count(complete_graph(3), 3) == 0);
    CHECK(ktree_count(path_graph(3), 3) == 1);
    Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(ktree_count(star, 3) == 3);
    CHECK(ktree_count(star, 1) == 4);
    CHECK(ktree_count(star, 2) == 3);

    SUBCASE("equals subset brute force for N <= 12, k <= 5") {
        for (int rep = 0; rep < 8; ++rep) {
            Graph g = gen_er(12, 0.25, derive_seed(888, rep));
            for (int k = 2; k <= 5; ++k) CHECK(ktree_count(g, k) == brute_force_ktree(g, k));
        }
    }
    SUBCASE("node budget raises feasibility errors") {
        Graph g = gen_er(60, 0.3, 3);
        CHECK_THROWS_AS(ktree_count(g, 8, 1000), FeasibilityError);
    }
}

TEST_CASE("largest component asymptotics (light versions)") {
    SUBCASE("supercritical fraction approaches 1 - eta") {
        const int m = 10000, R = 30;
        const double lambda = 2.0;
        double sum = 0.0;
        for (int r = 0; r < R; ++r)
            sum += static_cast<double>(
                       largest_cc(gen_er(m, lambda / m, derive_seed(999, r))).size) /
                   m;
        double mean = sum / R;
        CHECK(std::abs(mean - giant_fraction(lambda)) < 0.02);
    }
}
