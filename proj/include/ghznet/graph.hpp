#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ghznet {

// Simple undirected graph over dense integer node ids 0..N-1.
// Neighbor lists are kept sorted; no self-loops, no parallel edges.
// Instances are immutable after construction in normal use and safe to share
// across threads read-only.
class Graph {
public:
    Graph() = default;
    explicit Graph(int node_count) : adj_(static_cast<std::size_t>(node_count)) {}

    int node_count() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const;

    bool has_node(int v) const { return v >= 0 && v < node_count(); }
    bool has_edge(int u, int v) const;
    // Inserts {u,v}; rejects self-loops and duplicates.
    void add_edge(int u, int v);
    // Inserts {u,v} unless it is already present. Returns true if inserted.
    bool add_edge_if_absent(int u, int v);

    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    std::vector<std::pair<int, int>> edges() const;  // u < v, lexicographic

private:
    std::vector<std::vector<int>> adj_;
};

// Degree table for greedy star selection: nodes sorted by degree descending,
// ties broken by a seeded permutation. Deterministic per (graph, seed).
struct DegreeTable {
    std::vector<std::pair<int, int>> entries;  // (node, degree)
};

DegreeTable degree_table(const Graph& g, std::uint64_t seed);

// Breadth-first tree from `root`, spanning exactly root's component.
// parent[v] = -1 for the root and for unreached nodes; level[v] = -1 when
// unreached.
struct BfsTree {
    int root = -1;
    std::vector<int> parent;
    std::vector<int> level;
};

BfsTree bfs_tree(const Graph& g, int root);

// Empty graph counts as connected (vacuous).
bool is_connected(const Graph& g);

struct ComponentResult {
    Graph graph;
    std::vector<int> orig_of;  // orig_of[new_id] = original node id
};

// Maximum-cardinality component; ties broken by smallest contained node id.
ComponentResult largest_connected_component(const Graph& g);

// Longest shortest path, via a BFS sweep from every node. Throws on
// disconnected or empty input; a single node has diameter 0.
int diameter(const Graph& g);

// BFS spanning tree of a connected graph (unweighted, so any spanning tree
// is minimum). Edge set is a subset of g's edges.
Graph spanning_tree(const Graph& g);

std::vector<int> internal_nodes(const Graph& g);  // degree >= 2
std::vector<int> leaves(const Graph& g);          // degree == 1

// JSON interchange format: {"n": N, "edges": [[u,v],...]} with 0-based ids.
// Parsing rejects self-loops, duplicate edges and out-of-range ids.
Graph graph_from_json(const std::string& text);
std::string graph_to_json(const Graph& g);
Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

}  // namespace ghznet
