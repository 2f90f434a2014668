#include "commdet/combinatorics.hpp"

#include <algorithm>
#include <cmath>

#include "commdet/errors.hpp"

namespace commdet {

std::string to_string(uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

namespace {

uint128 ipow(uint128 base, int exp) {
    uint128 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

uint128 labelled_tree_count(int l) {
    require(l >= 1, "labelled_tree_count: l must be >= 1");
    require(l <= 28, "labelled_tree_count: l too large for exact 128-bit count");
    if (l <= 2) return 1;
    return ipow(static_cast<uint128>(l), l - 2);
}

uint128 trees_containing_tree(int k, int l) {
    require(k >= 1 && k <= l, "trees_containing_tree: need 1 <= k <= l");
    require(l <= 28, "trees_containing_tree: l too large for exact 128-bit count");
    if (k == l) return 1;
    // k * l^(l-k-1); for k = l-1 the exponent is 0.
    return static_cast<uint128>(k) * ipow(static_cast<uint128>(l), l - k - 1);
}

ForestCountTable forest_counts(int k) {
    require(k >= 1, "forest_counts: k must be >= 1");
    if (k > 8) throw FeasibilityError("forest_counts: exhaustive enumeration capped at k <= 8");

    ForestCountTable table{k, std::vector<uint128>(static_cast<std::size_t>(k), 0)};
    std::vector<Graph::Edge> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

    // Depth-first over edge subsets with rollback-able union-find; a branch
    // dies as soon as an included edge closes a cycle, so only forests (plus
    // their immediate dead ends) are visited.
    std::vector<int> parent(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };

    auto rec = [&](auto&& self, std::size_t idx, int num_components) -> void {
        if (idx == pairs.size()) {
            ++table.counts[static_cast<std::size_t>(num_components - 1)];
            return;
        }
        // exclude pairs[idx]
        self(self, idx + 1, num_components);
        // include pairs[idx] if it joins two components
        auto [a, b] = pairs[idx];
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(ra)] = rb;
            self(self, idx + 1, num_components - 1);
            parent[static_cast<std::size_t>(ra)] = ra;
        }
    };
    rec(rec, 0, k);
    return table;
}

std::vector<Graph::Edge> prufer_decode(const std::vector<int>& seq, int l) {
    require(l >= 2, "prufer_decode: l must be >= 2");
    require(static_cast<int>(seq.size()) == l - 2, "prufer_decode: sequence length must be l-2");
    std::vector<int> degree(static_cast<std::size_t>(l), 1);
    for (int s : seq) {
        require(s >= 0 && s < l, "prufer_decode: label out of range");
        ++degree[static_cast<std::size_t>(s)];
    }
    std::vector<Graph::Edge> edges;
    edges.reserve(static_cast<std::size_t>(l - 1));
    // Smallest-leaf elimination without a heap: l is tiny in all uses.
    std::vector<char> used(static_cast<std::size_t>(l), 0);
    for (int s : seq) {
        int leaf = -1;
        for (int v = 0; v < l; ++v)
            if (!used[static_cast<std::size_t>(v)] && degree[static_cast<std::size_t>(v)] == 1) {
                leaf = v;
                break;
            }
        used[static_cast<std::size_t>(leaf)] = 1;
        edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
        --degree[static_cast<std::size_t>(s)];
    }
    std::vector<int> rest;
    for (int v = 0; v < l; ++v)
        if (!used[static_cast<std::size_t>(v)]) rest.push_back(v);
    edges.emplace_back(rest[0], rest[1]);
    return edges;
}

void for_each_labelled_tree(int l,
                            const std::function<void(const std::vector<Graph::Edge>&)>& fn) {
    require(l >= 2, "for_each_labelled_tree: l must be >= 2");
    require(l <= 10, "for_each_labelled_tree: enumeration capped at l <= 10");
    if (l == 2) {
        fn({{0, 1}});
        return;
    }
    std::vector<int> seq(static_cast<std::size_t>(l - 2), 0);
    for (;;) {
        fn(prufer_decode(seq, l));
        int pos = l - 3;
        while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == l - 1) {
            seq[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++seq[static_cast<std::size_t>(pos)];
    }
}

double trees_containing_forest_bound(int k, int r, int l) {
    require(r >= 1 && k >= r && l >= k, "trees_containing_forest_bound: bad sizes");
    double kk = k, rr = r, ll = l;
    double e1 = ll - kk + rr - 1.0;
    return std::pow(kk / rr, rr) * std::pow(ll, e1) * std::pow(e1, rr - 1.0);
}

}  // namespace commdet
