#include "commdet/generate.hpp"

#include <algorithm>
#include <cmath>

#include "commdet/errors.hpp"
#include "commdet/rng.hpp"

namespace commdet {

namespace {

// Appends the edges of one Bernoulli(p) pass over the pairs {(i,j): i<j} of
// the vertex set `verts` (size m).  Pairs are linearised row-major:
// (0,1),(0,2),...,(0,m-1),(1,2),...  For p < 0.25 the iteration jumps between
// successes with geometric gaps, log-uniform inversion; otherwise one
// Bernoulli draw per pair.
template <typename EmitEdge>
void bernoulli_pairs(long long m, double p, SplitMix64& rng, EmitEdge&& emit) {
    if (m < 2 || p <= 0.0) return;
    const long long total = m * (m - 1) / 2;
    if (p >= 1.0) {
        for (long long i = 0; i < m; ++i)
            for (long long j = i + 1; j < m; ++j) emit(i, j);
        return;
    }
    if (p >= 0.25) {
        for (long long i = 0; i < m; ++i)
            for (long long j = i + 1; j < m; ++j)
                if (rng.bernoulli(p)) emit(i, j);
        return;
    }
    const double log1mp = std::log1p(-p);
    long long t = -1;          // index of last success in the pair sequence
    long long row = 0;         // current decoded position
    long long row_start = 0;   // pair index of (row, row+1)
    for (;;) {
        // Gap G >= 1 with P(G = g) = p (1-p)^{g-1}.
        double u = rng.next_double_pos();
        double g = std::floor(std::log(u) / log1mp);
        long long gap = (g >= static_cast<double>(total) || g < 0.0)
                            ? total  // out of range; terminates below
                            : static_cast<long long>(g) + 1;
        if (t > total - 1 - gap) break;
        t += gap;
        while (t >= row_start + (m - 1 - row)) {
            row_start += m - 1 - row;
            ++row;
        }
        emit(row, row + 1 + (t - row_start));
    }
}

}  // namespace

Graph gen_er(int N, double p, std::uint64_t seed) {
    require(N >= 1, "gen_er: N must be >= 1");
    require(p >= 0.0 && p <= 1.0, "gen_er: p must be in [0,1]");
    SplitMix64 rng(seed);
    std::vector<Graph::Edge> edges;
    if (p > 0.0) edges.reserve(static_cast<std::size_t>(p * N * (N - 1) / 2 * 1.2) + 16);
    bernoulli_pairs(N, p, rng, [&](long long i, long long j) {
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    });
    return Graph::from_edges(N, std::move(edges));
}

std::vector<int> sample_subset(int N, int n, std::uint64_t seed) {
    require(n >= 0 && n <= N, "sample_subset: need 0 <= n <= N");
    SplitMix64 rng(seed);
    // Partial Fisher-Yates on 0..N-1.
    std::vector<int> ids(N);
    for (int i = 0; i < N; ++i) ids[i] = i;
    for (int i = 0; i < n; ++i) {
        int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(N - i)));
        std::swap(ids[i], ids[j]);
    }
    std::vector<int> S(ids.begin(), ids.begin() + n);
    std::sort(S.begin(), S.end());
    return S;
}

Graph gen_planted_fixed(int N, double p0, const std::vector<int>& S, double p1,
                        std::uint64_t seed) {
    require(N >= 1, "gen_planted: N must be >= 1");
    require(p0 >= 0.0 && p0 <= 1.0 && p1 >= 0.0 && p1 <= 1.0,
            "gen_planted: probabilities must be in [0,1]");
    std::vector<char> in_S(N, 0);
    for (int v : S) {
        require(v >= 0 && v < N, "gen_planted: community vertex out of range");
        in_S[v] = 1;
    }
    // Background pass at p0 over all pairs, discarding within-S pairs, then an
    // independent pass at p1 over the S pairs.
    SplitMix64 rng(seed);
    std::vector<Graph::Edge> edges;
    bernoulli_pairs(N, p0, rng, [&](long long i, long long j) {
        if (!(in_S[i] && in_S[j]))
            edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    });
    const auto m = static_cast<long long>(S.size());
    bernoulli_pairs(m, p1, rng, [&](long long a, long long b) {
        edges.emplace_back(S[static_cast<std::size_t>(a)], S[static_cast<std::size_t>(b)]);
    });
    return Graph::from_edges(N, std::move(edges));
}

PlantedInstance gen_planted(int N, double p0, int n, double p1, std::uint64_t seed) {
    require(n >= 2 && n <= N, "gen_planted: need 2 <= n <= N");
    require(p0 <= p1, "gen_planted: need p0 <= p1");
    std::vector<int> S = sample_subset(N, n, derive_seed(seed, 0));
    Graph g = gen_planted_fixed(N, p0, S, p1, derive_seed(seed, 1));
    return {std::move(g), std::move(S), {N, n, p0, p1}};
}

}  // namespace commdet
