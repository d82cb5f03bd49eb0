#pragma once

#include <cstdint>
#include <vector>

#include "ghznet/graph.hpp"

namespace ghznet {

struct SteinerResult {
    Graph tree;                  // full node-id space; non-members isolated
    std::vector<int> terminals;
    int node_count = 0;
    int edge_count = 0;
};

// Distance-network 2-approximation of the Steiner tree (Mehlhorn variant):
// nearest-terminal partition, terminal distance graph, its spanning tree,
// path expansion, and pruning of non-terminal leaves.
SteinerResult steiner_approx(const Graph& g, const std::vector<int>& terminals);

// Gate cost of one star expansion on a node of degree k.
long long expansion_gates_keep(int k);  // central node kept:      C(k,2) + 2k - 1
long long expansion_gates_drop(int k);  // central node discarded: C(k,2) + k

struct GateModelReport {
    long long total_gates = 0;
    // (node, degree at expansion, gates charged)
    std::vector<std::tuple<int, int, long long>> expansion_log;
};

// Gate-cost model of the star-expansion baseline: build a spanning tree,
// pick a seeded leaf, then expand internal nodes in BFS order from that
// leaf, charging expansion_gates_keep(tree degree) per expansion, until all
// nodes are absorbed. Total is bounded by 2N^2 - 2N - 1.
GateModelReport star_expansion_gate_cost(const Graph& g, std::uint64_t seed);

// Gate cost of the connection-transfer baseline on a chain of n nodes:
// n(n-3)/2 + 1.
long long transfer_gate_cost_chain(int n);

// Generic per-transfer counter on a tree: each non-root node costs one gate
// per connection transfer along its root path (depth - 1).
long long transfer_gate_cost_tree(const Graph& tree, int root);

// Greedy dominating set: repeatedly pick the node covering the most
// uncovered nodes (itself plus neighbors) until all nodes are covered.
std::vector<int> greedy_dominating_set(const Graph& g);

bool is_dominating_set(const Graph& g, const std::vector<int>& set);

// Exact domination number by branch and bound; limited to small graphs.
int exact_dominating_number(const Graph& g, int max_nodes = 24);

struct SourceCountBounds {
    int mds_greedy = 0;      // approximate domination number (lower-bound proxy)
    int internal_count = 0;  // internal node count (upper bound)
};

// The two source-count bounds evaluated on a spanning/plan tree.
SourceCountBounds source_count_bounds(const Graph& tree);

}  // namespace ghznet
