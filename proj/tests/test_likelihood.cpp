#include <doctest.h>

#include <cmath>
#include <vector>

#include "commdet/analytic.hpp"
#include "commdet/generate.hpp"
#include "commdet/likelihood.hpp"
#include "commdet/rng.hpp"
#include "commdet/statistics.hpp"

using namespace commdet;
using doctest::Approx;

namespace {

Graph empty_graph(int n) { return Graph::from_edges(n, {}); }

}  // namespace

TEST_CASE("ls: sufficient-statistic form equals the ratio form") {
    SUBCASE("p1 = p0 gives 1 on anything") {
        Graph g = gen_er(8, 0.4, 3);
        CHECK(ls(g, {0, 1, 2, 3}, 0.2, 0.2) == Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("worked examples at |S| = 3") {
        CHECK(ls(empty_graph(5), {0, 1, 2}, 0.1, 0.2) ==
              Approx(0.7023319616).epsilon(1e-9));
        Graph two_edges = Graph::from_edges(4, {{0, 1}, {1, 2}});
        CHECK(ls(two_edges, {0, 1, 2}, 0.1, 0.2) == Approx(3.5555555556).epsilon(1e-9));
    }
    SUBCASE("agrees with (p1/p0)^W ((1-p1)/(1-p0))^(n2-W) within 1e-12 relative") {
        for (int rep = 0; rep < 20; ++rep) {
            Graph g = gen_er(12, 0.3, derive_seed(42, rep));
            auto S = sample_subset(12, 5, derive_seed(43, rep));
            double p0 = 0.07, p1 = 0.31;
            long long w = edges_within(g, S);
            double direct = std::pow(p1 / p0, static_cast<double>(w)) *
                            std::pow((1 - p1) / (1 - p0), 10.0 - static_cast<double>(w));
            CHECK(ls(g, S, p0, p1) == Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("truncation events") {
    Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(truncation_holds(tri, TruncationEvent::none()));
    CHECK_FALSE(truncation_holds(tri, TruncationEvent::forest()));
    CHECK(truncation_holds(path, TruncationEvent::forest()));
    CHECK_FALSE(truncation_holds(path, TruncationEvent::forest_with_cap(2.5)));
    CHECK(truncation_holds(path, TruncationEvent::forest_with_cap(3.0)));

    SUBCASE("forest event implies the w_k = k edge-cap profile") {
        for (int rep = 0; rep < 40; ++rep) {
            Graph g = gen_er(10, 0.25, derive_seed(52, rep));
            if (!truncation_holds(g, TruncationEvent::forest())) continue;
            std::vector<std::pair<int, double>> caps;
            for (int k = 2; k <= 10; ++k) caps.emplace_back(k, static_cast<double>(k));
            CHECK(truncation_holds(g, TruncationEvent::edge_cap_profile(caps)));
        }
    }
    SUBCASE("forest cap f_n from lambda1") {
        CHECK(forest_cap_fn(0.5, 2000, 0.1) ==
              Approx(1.1 * std::log(2000.0) / rate_I(0.5)).epsilon(1e-12));
    }
}

TEST_CASE("full_L: exhaustive subset average") {
    SUBCASE("p1 = p0 gives exactly 1") {
        Graph g = gen_er(10, 0.3, 11);
        auto r = full_L(g, 4, 0.2, 0.2, TruncationEvent::none());
        CHECK(r.value == Approx(1.0).epsilon(1e-13));
        CHECK(r.subsets == 210);
        CHECK(r.surviving == 210);
    }
    SUBCASE("forest truncation at n = 3 removes exactly the triangles") {
        Graph g = gen_er(9, 0.35, 17);
        double p0 = 0.1, p1 = 0.4;
        auto with = full_L(g, 3, p0, p1, TruncationEvent::forest());
        auto without = full_L(g, 3, p0, p1, TruncationEvent::none());
        CHECK(without.surviving - with.surviving == triangles(g));
        CHECK(with.value <= without.value + 1e-15);
    }
    SUBCASE("truncation never increases L (decreasing events)") {
        for (int rep = 0; rep < 10; ++rep) {
            Graph g = gen_er(9, 0.3, derive_seed(61, rep));
            double p0 = 0.05, p1 = 0.5;
            double full = full_L(g, 4, p0, p1, TruncationEvent::none()).value;
            CHECK(full_L(g, 4, p0, p1, TruncationEvent::forest()).value <= full + 1e-15);
            CHECK(full_L(g, 4, p0, p1, TruncationEvent::forest_with_cap(2.0)).value <=
                  full_L(g, 4, p0, p1, TruncationEvent::forest()).value + 1e-15);
        }
    }
    SUBCASE("feasibility cap on C(N,n)") {
        Graph g = gen_er(40, 0.05, 3);
        CHECK_THROWS_AS(full_L(g, 20, 0.05, 0.5, TruncationEvent::none(), 1000),
                        FeasibilityError);
    }
}

TEST_CASE("exhaustive_moments: identities over all graphs") {
    SUBCASE("E0[L] = 1 without truncation, double mode") {
        auto m = exhaustive_moments(4, 2, 0.3, 0.6, TruncationEvent::none());
        CHECK(m.e0_lt == Approx(1.0).epsilon(1e-12));
        CHECK(m.ps_gamma == Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("forest truncation, n = 3: E0[Lt] = P_S(Gamma) = 1 - p1^3") {
        for (double p1 : {0.25, 0.5, 0.75}) {
            auto m = exhaustive_moments(4, 3, 0.125, p1, TruncationEvent::forest());
            CHECK(m.e0_lt == Approx(1.0 - p1 * p1 * p1).epsilon(1e-12));
            CHECK(m.ps_gamma == Approx(1.0 - p1 * p1 * p1).epsilon(1e-12));
        }
        // and exactly, in rational arithmetic
        auto mr = exhaustive_moments_exact(4, 3, Rat(1, 8), Rat(1, 2), TruncationEvent::forest());
        CHECK(mr.e0_lt == Rat(7, 8));  // 1 - (1/2)^3
        CHECK(mr.e0_lt == mr.ps_gamma);
    }
    SUBCASE("E0[L^2] equals the hypergeometric representation") {
        // E0[L^2] = E[exp(Delta K(K-1)/2)], K ~ Hyp(N, n, n), no truncation
        const int N = 5, n = 3;
        double p0 = 0.15, p1 = 0.45;
        auto m = exhaustive_moments(N, n, p0, p1, TruncationEvent::none());
        double delta = tilt(p0, p1).delta;
        // P(K=k) = C(n,k) C(N-n, n-k) / C(N,n)
        auto binom = [](int a, int b) {
            double r = 1;
            for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
            return b < 0 || b > a ? 0.0 : r;
        };
        double expect = 0.0;
        for (int k = 0; k <= n; ++k)
            expect += binom(n, k) * binom(N - n, n - k) / binom(N, n) *
                      std::exp(delta * k * (k - 1) / 2.0);
        CHECK(m.e0_lt2 == Approx(expect).epsilon(1e-10));
    }
    SUBCASE("rational N=5 n=3: E0[L] = 1 exactly with non-dyadic rationals") {
        auto m = exhaustive_moments_exact(5, 3, Rat(1, 3), Rat(2, 3), TruncationEvent::none());
        CHECK(m.e0_lt == Rat(1));
    }
}

TEST_CASE("Monte-Carlo E0[Lt] equals P_S(forest) across the two routes") {
    // lambda0 = 1 at N = 200 (p0 = 0.005), lambda1 = 0.5 at n = 20 (p1 = 0.025).
    // Both sides depend only on the 20-vertex community subgraph, so the
    // importance-sampling route draws G(20, p0) and weights by L * 1{forest},
    // while the direct route draws G(20, p1) and averages 1{forest}.
    const int n = 20, R1 = 40000, R2 = 20000;
    const double p0 = 0.005, p1 = 0.025;
    const long long pairs = n * (n - 1) / 2;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < R1; ++r) {
        Graph gs = gen_er(n, p0, derive_seed(71, r));
        double v = 0.0;
        if (is_forest(gs).is_forest)
            v = std::exp(log_ls(gs.num_edges(), pairs, p0, p1));
        sum += v;
        sum2 += v * v;
    }
    double is_mean = sum / R1;
    double is_var = (sum2 / R1 - is_mean * is_mean) * R1 / (R1 - 1.0);
    double direct = 0.0;
    for (int r = 0; r < R2; ++r)
        direct += is_forest(gen_er(n, p1, derive_seed(72, r))).is_forest ? 1.0 : 0.0;
    direct /= R2;
    double se = std::sqrt(is_var / R1 + direct * (1 - direct) / R2);
    CHECK(std::abs(is_mean - direct) <= 3.0 * se);
}

TEST_CASE("risk_lower_bound") {
    CHECK(risk_lower_bound(1.0, 1.0) == 4.0 / 27.0);
    CHECK(risk_lower_bound(0.0, 0.5) == 0.0);
    CHECK(risk_lower_bound(0.0, 0.0) == 0.0);  // 0/0 convention
    CHECK(risk_lower_bound(0.9665, 1.02) ==
          Approx(4.0 / 27.0 * std::pow(0.9665, 3) / 1.02).epsilon(1e-14));
    CHECK_THROWS_AS(risk_lower_bound(0.5, 0.0), std::invalid_argument);
}
