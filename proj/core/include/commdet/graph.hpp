#pragma once

// Immutable undirected simple graph: edge list plus sorted adjacency, vertices
// labelled 0..N-1.  Construction validates simplicity; after that the object
// is safe to share across threads.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace commdet {

class Graph {
public:
    using Edge = std::pair<int, int>;  // (i, j) with i < j

    Graph() = default;

    // Validates: vertex range, i != j, no duplicate edges.  Edges are stored
    // normalised (i < j) and sorted lexicographically.
    static Graph from_edges(int num_vertices, std::vector<Edge> edges);

    int num_vertices() const { return num_vertices_; }
    long long num_edges() const { return static_cast<long long>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const int> neighbors(int v) const {
        return {adjacency_.data() + offsets_[v],
                static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
    }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(int u, int v) const;

private:
    int num_vertices_ = 0;
    std::vector<Edge> edges_;
    // CSR adjacency; neighbor lists sorted ascending.
    std::vector<int> adjacency_;
    std::vector<int> offsets_{0};
};

struct ComponentPartition {
    std::vector<int> label;           // component id per vertex, ids dense from 0
    std::vector<long long> sizes;     // by component id
    std::vector<long long> sorted_sizes;  // descending
};

ComponentPartition components(const Graph& g);

// Subgraph induced by S, vertices relabelled 0..|S|-1 in the order given.
Graph induced(const Graph& g, const std::vector<int>& S);

struct ForestCheck {
    bool is_forest;
    long long cyclomatic_number;  // m - N + c
};

ForestCheck is_forest(const Graph& g);

// Exact count of simple cycles of length >= 3, each counted once.  Oracle for
// the Poisson cycle-count limit; capped at 16 vertices.
long long count_simple_cycles(const Graph& g);

struct LargestComponent {
    long long size;        // |C_max|
    long long edge_count;  // W_{C_max}
    int component_id;
};

// Largest connected component; ties broken by smallest minimum vertex label.
LargestComponent largest_cc(const Graph& g);

}  // namespace commdet
