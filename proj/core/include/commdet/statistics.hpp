#pragma once

// Test statistics: total degree, subset edge counts, the scan maxima
// W*_k = max_{|T|=k} W_T (exact / greedy / component-seeded), the broad scan
// sup_k W*_k / k, largest-component size, triangle count and induced-tree
// count.  Everything here is a pure function of an immutable Graph.

#include <cstdint>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

// Total edge count W.
long long total_degree(const Graph& g);

// Edges with both endpoints in S.
long long edges_within(const Graph& g, const std::vector<int>& S);

enum class ScanMode { exact, greedy, component };

struct ScanResult {
    long long value = 0;
    std::vector<int> witness;  // sorted, |witness| == k
    bool exact = false;        // true iff value is the true maximum
};

struct ScanOptions {
    // Exact mode is admitted when N <= exact_vertex_cap or k <= 3; the cap is
    // a parameter so enumeration oracles at slightly larger N can opt in.
    int exact_vertex_cap = 40;
    // Hard stop for the branch-and-bound search; exceeding it raises
    // FeasibilityError rather than silently burning time.
    long long node_budget = 50'000'000;
    int restarts = 8;                    // random restarts in greedy mode
    std::uint64_t seed = 0x5ca2b1a5u;    // restart stream (fixed constant)
};

// W*_k.  exact: true maximum by branch-and-bound (degree-ordered, optimistic
// completion bound), seeded with the greedy incumbent.  greedy: best of the
// component-seeded hill climb and `restarts` random-start hill climbs; a
// lower bound, exact=false.  component: the component-seeded climb alone.
// Deterministic given (graph, k, mode, options).
ScanResult scan(const Graph& g, int k, ScanMode mode, const ScanOptions& opts = {});

struct BroadScanResult {
    double value = 0.0;  // max over k of W*_k / k
    int best_k = 0;
    ScanResult best;
};

// Broad scan over k in [max(2, ceil(n/u)), n] with u = max(log log(N/n), 2).
BroadScanResult broad_scan(const Graph& g, int n, ScanMode mode,
                           const ScanOptions& opts = {});

// Scan range used by broad_scan (exposed for tests and calibration).
std::pair<int, int> broad_scan_range(int N, int n);

// Exact triangle count, neighbor intersection over a degree ordering.
long long triangles(const Graph& g);

// Number of k-subsets whose induced subgraph is a tree (connected, k-1
// edges), by connected-induced-subgraph enumeration with exclusion sets.
// Enumeration work above node_budget raises FeasibilityError.
long long ktree_count(const Graph& g, int k, long long node_budget = 100'000'000);

}  // namespace commdet
