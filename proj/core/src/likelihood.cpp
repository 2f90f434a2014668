#include "commdet/likelihood.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "commdet/analytic.hpp"
#include "commdet/errors.hpp"
#include "commdet/statistics.hpp"

namespace commdet {

TruncationEvent TruncationEvent::forest_with_cap(double f) {
    require(f >= 1.0, "forest_with_cap: cap must be >= 1");
    return {Kind::forest_with_cap, f, {}};
}

TruncationEvent TruncationEvent::edge_cap_profile(std::vector<std::pair<int, double>> caps) {
    for (const auto& [k, w] : caps) require(k >= 1, "edge_cap_profile: k must be >= 1");
    return {Kind::edge_cap_profile, 0.0, std::move(caps)};
}

double forest_cap_fn(double lambda1, long long n, double c) {
    require(lambda1 > 0.0 && lambda1 < 1.0, "forest_cap_fn: lambda1 must be in (0,1)");
    require(n >= 2, "forest_cap_fn: n must be >= 2");
    require(c > 0.0, "forest_cap_fn: c must be positive");
    return (1.0 + c) * std::log(static_cast<double>(n)) / rate_I(lambda1);
}

bool truncation_holds(const Graph& gs, const TruncationEvent& event) {
    switch (event.kind) {
        case TruncationEvent::Kind::none:
            return true;
        case TruncationEvent::Kind::forest:
            return is_forest(gs).is_forest;
        case TruncationEvent::Kind::forest_with_cap: {
            if (!is_forest(gs).is_forest) return false;
            return static_cast<double>(largest_cc(gs).size) <= event.component_cap;
        }
        case TruncationEvent::Kind::edge_cap_profile: {
            for (const auto& [k, w] : event.edge_caps) {
                if (k > gs.num_vertices()) continue;
                if (static_cast<double>(scan(gs, k, ScanMode::exact).value) > w) return false;
            }
            return true;
        }
    }
    return true;
}

double log_ls(long long w_s, long long pairs, double p0, double p1) {
    require(p0 > 0.0 && p0 <= p1 && p1 < 1.0, "log_ls: need 0 < p0 <= p1 < 1");
    if (p0 == p1) return 0.0;
    Tilt t = tilt(p0, p1);
    return t.theta * static_cast<double>(w_s) - t.cgf_theta * static_cast<double>(pairs);
}

double ls(const Graph& g, const std::vector<int>& S, double p0, double p1) {
    require(S.size() >= 2, "ls: |S| must be >= 2");
    long long pairs = static_cast<long long>(S.size()) * (static_cast<long long>(S.size()) - 1) / 2;
    return std::exp(log_ls(edges_within(g, S), pairs, p0, p1));
}

namespace {

// Calls fn(subset) for every size-n subset of 0..N-1, lexicographic order.
template <typename Fn>
void for_each_subset(int N, int n, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        fn(idx);
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == N - n + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < n; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

FullLResult full_L(const Graph& g, int n, double p0, double p1,
                   const TruncationEvent& event, long long subset_cap) {
    require(n >= 2 && n <= g.num_vertices(), "full_L: need 2 <= n <= N");
    require(p0 > 0.0 && p0 <= p1 && p1 < 1.0, "full_L: need 0 < p0 <= p1 < 1");
    FullLResult out;
    out.subsets = binom(g.num_vertices(), n);
    if (out.subsets > subset_cap)
        throw FeasibilityError("full_L: C(N,n) exceeds the exhaustive subset cap");

    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(out.subsets));
    for_each_subset(g.num_vertices(), n, [&](const std::vector<int>& S) {
        Graph gs = induced(g, S);
        if (!truncation_holds(gs, event)) return;
        ++out.surviving;
        logs.push_back(log_ls(gs.num_edges(), pairs, p0, p1));
    });
    if (logs.empty()) {
        out.value = 0.0;
        return out;
    }
    // log-sum-exp with Kahan compensation on the mantissa sum.
    double mx = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0, comp = 0.0;
    for (double x : logs) {
        double term = std::exp(x - mx) - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    out.value = std::exp(mx + std::log(sum) - std::log(static_cast<double>(out.subsets)));
    return out;
}

namespace {

// Shared skeleton of the exhaustive moment sums; Field is double or Rat.
template <typename Field>
struct ExhaustiveSums {
    int N, n;
    Field p0, p1, q0, q1;  // q = 1 - p
    const TruncationEvent& event;
    std::vector<Graph::Edge> pairs;               // all N(N-1)/2 pairs
    std::vector<std::uint32_t> subset_masks;      // pair mask per subset
    std::vector<std::vector<int>> subsets;

    ExhaustiveSums(int N_, int n_, Field p0_, Field p1_, Field one,
                   const TruncationEvent& ev)
        : N(N_), n(n_), p0(p0_), p1(p1_), q0(one - p0_), q1(one - p1_), event(ev) {
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) pairs.emplace_back(i, j);
        for_each_subset(N, n, [&](const std::vector<int>& S) {
            std::uint32_t mask = 0;
            for (std::size_t e = 0; e < pairs.size(); ++e) {
                auto [i, j] = pairs[e];
                bool in_i = std::binary_search(S.begin(), S.end(), i);
                bool in_j = std::binary_search(S.begin(), S.end(), j);
                if (in_i && in_j) mask |= (1u << e);
            }
            subset_masks.push_back(mask);
            subsets.push_back(S);
        });
    }

    Graph induced_from_mask(const std::vector<int>& S, std::uint32_t gmask) const {
        std::vector<int> pos(static_cast<std::size_t>(N), -1);
        for (std::size_t i = 0; i < S.size(); ++i) pos[static_cast<std::size_t>(S[i])] =
            static_cast<int>(i);
        std::vector<Graph::Edge> es;
        for (std::size_t e = 0; e < pairs.size(); ++e)
            if (gmask & (1u << e)) {
                auto [i, j] = pairs[e];
                if (pos[static_cast<std::size_t>(i)] != -1 && pos[static_cast<std::size_t>(j)] != -1)
                    es.emplace_back(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
            }
        return Graph::from_edges(n, std::move(es));
    }

    // L_S as a power table over W_S: L_S = (p1/p0)^W * (q1/q0)^(n2-W).
    std::vector<Field> ls_by_edges(Field one) const {
        const int n2 = n * (n - 1) / 2;
        Field rp = p1 / p0, rq = q1 / q0;
        std::vector<Field> table;
        for (int w = 0; w <= n2; ++w)
            table.push_back(field_pow(rp, w, one) * field_pow(rq, n2 - w, one));
        return table;
    }

    static Field field_pow(Field base, int e, Field one) {
        Field r = one;
        for (int i = 0; i < e; ++i) r = r * base;
        return r;
    }
};

template <typename Field>
void exhaustive_impl(int N, int n, Field p0, Field p1, Field one,
                     const TruncationEvent& event, Field& e0_lt, Field& e0_lt2,
                     Field& ps_gamma) {
    require(N >= 2 && N <= 5, "exhaustive_moments: N must be in [2,5]");
    require(n >= 2 && n <= N, "exhaustive_moments: need 2 <= n <= N");

    ExhaustiveSums<Field> ctx(N, n, p0, p1, one, event);
    const auto M = static_cast<std::uint32_t>(ctx.pairs.size());
    const auto subsets = ctx.subsets.size();
    auto ls_table = ctx.ls_by_edges(one);
    auto fpow = ExhaustiveSums<Field>::field_pow;

    const std::uint32_t graphs = 1u << M;
    Field zero = one - one;
    Field subs_count = zero;
    for (std::size_t s = 0; s < subsets; ++s) subs_count += one;

    e0_lt = zero;
    e0_lt2 = zero;
    for (std::uint32_t gmask = 0; gmask < graphs; ++gmask) {
        int edges = std::popcount(gmask);
        Field pg = fpow(p0, edges, one) * fpow(ctx.q0, static_cast<int>(M) - edges, one);
        Field lt = zero;
        for (std::size_t s = 0; s < subsets; ++s) {
            std::uint32_t inside = gmask & ctx.subset_masks[s];
            Graph gs = ctx.induced_from_mask(ctx.subsets[s], gmask);
            if (!truncation_holds(gs, event)) continue;
            lt += ls_table[static_cast<std::size_t>(std::popcount(inside))];
        }
        lt = lt / subs_count;
        e0_lt += pg * lt;
        e0_lt2 += pg * lt * lt;
    }

    // P_S(Gamma_S) for S = {0..n-1}: the event depends on the community
    // subgraph only, so the sum runs over its 2^{C(n,2)} subgraphs.
    ps_gamma = zero;
    std::vector<Graph::Edge> spairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) spairs.emplace_back(i, j);
    const std::uint32_t sgraphs = 1u << spairs.size();
    for (std::uint32_t h = 0; h < sgraphs; ++h) {
        std::vector<Graph::Edge> es;
        for (std::size_t e = 0; e < spairs.size(); ++e)
            if (h & (1u << e)) es.push_back(spairs[e]);
        Graph gs = Graph::from_edges(n, std::move(es));
        if (!truncation_holds(gs, event)) continue;
        int edges = std::popcount(h);
        ps_gamma += fpow(p1, edges, one) *
                    fpow(ctx.q1, static_cast<int>(spairs.size()) - edges, one);
    }
}

}  // namespace

Moments exhaustive_moments(int N, int n, double p0, double p1,
                           const TruncationEvent& event) {
    require(p0 > 0.0 && p0 <= p1 && p1 < 1.0, "exhaustive_moments: need 0 < p0 <= p1 < 1");
    Moments m;
    exhaustive_impl<double>(N, n, p0, p1, 1.0, event, m.e0_lt, m.e0_lt2, m.ps_gamma);
    return m;
}

RationalMoments exhaustive_moments_exact(int N, int n, const Rat& p0, const Rat& p1,
                                         const TruncationEvent& event) {
    RationalMoments m;
    exhaustive_impl<Rat>(N, n, p0, p1, Rat(1), event, m.e0_lt, m.e0_lt2, m.ps_gamma);
    return m;
}

double risk_lower_bound(double e0_lt, double e0_lt2) {
    require(e0_lt >= 0.0, "risk_lower_bound: E0[Lt] must be >= 0");
    require(e0_lt2 >= 0.0, "risk_lower_bound: E0[Lt^2] must be >= 0");
    if (e0_lt == 0.0) return 0.0;  // 0/0 = 0 convention
    require(e0_lt2 > 0.0, "risk_lower_bound: E0[Lt^2] must be positive when E0[Lt] > 0");
    return (4.0 / 27.0) * e0_lt * e0_lt * e0_lt / e0_lt2;
}

}  // namespace commdet
