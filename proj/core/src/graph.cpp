#include "commdet/graph.hpp"

#include <algorithm>
#include <numeric>

#include "commdet/errors.hpp"

namespace commdet {

Graph Graph::from_edges(int num_vertices, std::vector<Edge> edges) {
    require(num_vertices >= 0, "Graph: negative vertex count");
    for (auto& [i, j] : edges) {
        require(i >= 0 && i < num_vertices && j >= 0 && j < num_vertices,
                "Graph: vertex label out of range");
        require(i != j, "Graph: self-loop");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(),
            "Graph: duplicate edge");

    Graph g;
    g.num_vertices_ = num_vertices;
    g.edges_ = std::move(edges);
    std::vector<int> deg(num_vertices, 0);
    for (const auto& [i, j] : g.edges_) {
        ++deg[i];
        ++deg[j];
    }
    g.offsets_.assign(num_vertices + 1, 0);
    for (int v = 0; v < num_vertices; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adjacency_.resize(2 * g.edges_.size());
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [i, j] : g.edges_) {
        g.adjacency_[cursor[i]++] = j;
        g.adjacency_[cursor[j]++] = i;
    }
    for (int v = 0; v < num_vertices; ++v)
        std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= num_vertices_ || v >= num_vertices_ || u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

// Weighted quick-union with path halving.
struct UnionFind {
    std::vector<int> parent, rank_;
    explicit UnionFind(int n) : parent(n), rank_(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // Returns false if x and y were already connected.
    bool unite(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) return false;
        if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
        parent[ry] = rx;
        if (rank_[rx] == rank_[ry]) ++rank_[rx];
        return true;
    }
};

}  // namespace

ComponentPartition components(const Graph& g) {
    const int n = g.num_vertices();
    UnionFind uf(n);
    for (const auto& [i, j] : g.edges()) uf.unite(i, j);

    ComponentPartition part;
    part.label.assign(n, -1);
    int next_id = 0;
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        if (part.label[r] == -1) {
            part.label[r] = next_id++;
            part.sizes.push_back(0);
        }
        part.label[v] = part.label[r];
        ++part.sizes[part.label[v]];
    }
    part.sorted_sizes = part.sizes;
    std::sort(part.sorted_sizes.rbegin(), part.sorted_sizes.rend());
    return part;
}

Graph induced(const Graph& g, const std::vector<int>& S) {
    std::vector<int> pos(g.num_vertices(), -1);
    for (std::size_t idx = 0; idx < S.size(); ++idx) {
        int v = S[idx];
        require(v >= 0 && v < g.num_vertices(), "induced: vertex out of range");
        require(pos[v] == -1, "induced: duplicate vertex in S");
        pos[v] = static_cast<int>(idx);
    }
    std::vector<Graph::Edge> edges;
    for (int v : S)
        for (int w : g.neighbors(v))
            if (w > v && pos[w] != -1) edges.emplace_back(pos[v], pos[w]);
    return Graph::from_edges(static_cast<int>(S.size()), std::move(edges));
}

ForestCheck is_forest(const Graph& g) {
    UnionFind uf(g.num_vertices());
    long long cycle_edges = 0;
    for (const auto& [i, j] : g.edges())
        if (!uf.unite(i, j)) ++cycle_edges;
    return {cycle_edges == 0, cycle_edges};
}

long long count_simple_cycles(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 16) throw FeasibilityError("count_simple_cycles: only supported for |V| <= 16");
    // For each root s (the smallest vertex of the cycle), walk simple paths
    // through vertices > s and count closures back to s of length >= 3.
    // Every cycle is found twice (two orientations).
    long long twice = 0;
    std::uint32_t visited = 0;

    auto dfs = [&](auto&& self, int s, int v, int depth) -> void {
        visited |= (1u << v);
        for (int w : g.neighbors(v)) {
            if (w == s && depth >= 2) ++twice;
            if (w > s && !(visited & (1u << w))) self(self, s, w, depth + 1);
        }
        visited &= ~(1u << v);
    };
    for (int s = 0; s < n; ++s) dfs(dfs, s, s, 0);
    return twice / 2;
}

LargestComponent largest_cc(const Graph& g) {
    if (g.num_vertices() == 0) return {0, 0, -1};
    auto part = components(g);
    // Smallest minimum vertex label wins ties; component ids are assigned in
    // order of their minimum vertex, so the first maximal id is the winner.
    int best = 0;
    for (std::size_t c = 1; c < part.sizes.size(); ++c)
        if (part.sizes[c] > part.sizes[best]) best = static_cast<int>(c);
    long long edges_in = 0;
    for (const auto& [i, j] : g.edges())
        if (part.label[i] == best) ++edges_in;
    return {part.sizes[best], edges_in, best};
}

}  // namespace commdet
