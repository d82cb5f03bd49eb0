#pragma once

#include <cstdint>
#include <vector>

#include "ghznet/graph.hpp"

namespace ghznet {

// One unit of local GHZ creation: a center node and the leaves it was
// selected with. Every (center, leaf) pair is an edge of the source graph at
// selection time. A bare two-node star has one designated center and one
// leaf.
struct Star {
    int center = -1;
    std::vector<int> leaves;

    int size() const { return 1 + static_cast<int>(leaves.size()); }
    bool contains(int v) const;
    std::vector<int> nodes() const;  // center first
};

struct FusionEdge {
    int star_a = -1;  // already in the merged list when star_b was attached
    int star_b = -1;
    int shared_node = -1;
};

// Full output of the planning pass: the final star list, the tree of fusions
// over the stars, and the subgraph the plan spans.
struct Plan {
    std::vector<Star> stars;
    std::vector<FusionEdge> fusion_edges;
    int root_star = 0;
    Graph subgraph;
};

struct CostReport {
    long long gates = 0;
    long long bell_pairs = 0;
    long long sources = 0;
    long long classical_bits = 0;
    long long removal_measurements = 0;  // subset case only
    int subgraph_size = 0;
};

// Work counter for the empirical complexity check; incremented once per
// elementary step (node or edge visit, heap operation, table entry).
struct PlanStats {
    std::uint64_t elementary_steps = 0;
};

// Greedy star selection: walk the descending degree table of g, emitting the
// star of each entry's remaining neighbors and deleting the entry's node,
// until every node is covered; leftover edges become two-node stars whose
// center is the endpoint with the higher original degree.
std::vector<Star> select_stars(const Graph& g, std::uint64_t seed, PlanStats* stats = nullptr);

// Merges a star list into a plan: the largest star seeds the merged list,
// and stars sharing at least one node are attached one at a time, trimmed so
// that exactly one shared node remains per attachment (the attaching star's
// center is preferred when it is shared). Fully-contained stars are dropped.
Plan modify_stars(const Graph& g, std::vector<Star> sg, std::uint64_t seed,
                  PlanStats* stats = nullptr);

// select_stars followed by modify_stars; spans all nodes of g.
Plan plan_complete(const Graph& g, std::uint64_t seed, PlanStats* stats = nullptr);

struct SubgraphResult {
    Graph graph;               // compacted node ids 0..S-1
    std::vector<int> orig_of;  // orig_of[new_id] = node id in the source graph
};

// Connected subgraph containing `desired`: the induced subgraph if it is
// already connected, otherwise a BFS tree from a seeded desired root pruned
// of non-desired leaves, induced back on g.
SubgraphResult connected_subgraph(const Graph& g, const std::vector<int>& desired,
                                  std::uint64_t seed);

struct SubsetPlan {
    Plan plan;
    CostReport cost;
    std::vector<int> subgraph_nodes;  // original ids, index = subgraph node id
};

// Plan for entangling only `desired`: prune to a connected subgraph, plan it
// completely, and account the removal of non-desired nodes as measurements.
SubsetPlan plan_subset(const Graph& g, const std::vector<int>& desired, std::uint64_t seed);

CostReport cost_report(const Plan& plan);

// The spanning tree the plan realizes: every (center, leaf) edge of every
// star, as a graph over the subgraph's nodes.
Graph plan_tree_graph(const Plan& plan);

}  // namespace ghznet
