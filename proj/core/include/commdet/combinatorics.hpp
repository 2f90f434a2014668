#pragma once

// Exact labelled-tree and labelled-forest counting: Cayley's formula, its
// extension to trees containing a fixed subtree, and the table F_{k,j} of
// forests on k vertices with j tree components.  Closed forms sit next to
// their enumeration oracles (Prufer decoding, acyclic edge-subset search) so
// each can check the other.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

using uint128 = unsigned __int128;

std::string to_string(uint128 v);

// Number of labelled trees on l vertices: l^(l-2) for l >= 2, 1 for l = 1.
uint128 labelled_tree_count(int l);

// Number T_k^(l) of labelled trees on l vertices containing a given labelled
// tree on k of them: k * l^(l-k-1); equals 1 when k == l.
uint128 trees_containing_tree(int k, int l);

// F_{k,1..k}: counts of labelled forests on k vertices by number of trees.
struct ForestCountTable {
    int k;
    std::vector<uint128> counts;  // counts[j-1] = F_{k,j}
};

// Exhaustive enumeration of acyclic edge subsets of K_k; capped at k <= 8.
ForestCountTable forest_counts(int k);

// Decodes a Prufer sequence (values in 0..l-1, length l-2) into the edge set
// of its labelled tree.
std::vector<Graph::Edge> prufer_decode(const std::vector<int>& seq, int l);

// Calls fn once per labelled tree on l vertices (l >= 2), edges normalised.
void for_each_labelled_tree(int l, const std::function<void(const std::vector<Graph::Edge>&)>& fn);

// Crude upper bound of the extended Cayley identity for trees containing a
// fixed forest with r components of total size k:
// (k/r)^r * l^(l-k+r-1) * (l-k+r-1)^(r-1).
double trees_containing_forest_bound(int k, int r, int l);

}  // namespace commdet
