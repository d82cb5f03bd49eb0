#include "ghznet/baselines.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "ghznet/rng.hpp"

namespace ghznet {

SteinerResult steiner_approx(const Graph& g, const std::vector<int>& terminals) {
    if (terminals.empty()) {
        throw std::invalid_argument("steiner_approx: terminal set is empty");
    }
    for (int t : terminals) {
        if (!g.has_node(t)) {
            throw std::invalid_argument("steiner_approx: terminal out of range");
        }
    }
    if (!is_connected(g)) {
        throw std::invalid_argument("steiner_approx: graph must be connected");
    }
    int n = g.node_count();
    std::vector<int> sorted_terminals = terminals;
    std::sort(sorted_terminals.begin(), sorted_terminals.end());
    sorted_terminals.erase(std::unique(sorted_terminals.begin(), sorted_terminals.end()),
                           sorted_terminals.end());

    SteinerResult result;
    result.terminals = sorted_terminals;
    result.tree = Graph(n);
    if (sorted_terminals.size() == 1) {
        result.node_count = 1;
        result.edge_count = 0;
        return result;
    }

    // Nearest-terminal partition via multi-source BFS.
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<int> near(static_cast<std::size_t>(n), -1);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    for (int t : sorted_terminals) {
        dist[static_cast<std::size_t>(t)] = 0;
        near[static_cast<std::size_t>(t)] = t;
        q.push(t);
    }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                near[static_cast<std::size_t>(v)] = near[static_cast<std::size_t>(u)];
                parent[static_cast<std::size_t>(v)] = u;
                q.push(v);
            }
        }
    }

    // Candidate terminal-pair connections, one per graph edge crossing the
    // partition, weighted by the induced path length.
    struct Candidate {
        int weight;
        int t1, t2;
        int u, v;
    };
    std::vector<Candidate> candidates;
    for (const auto& [u, v] : g.edges()) {
        int tu = near[static_cast<std::size_t>(u)];
        int tv = near[static_cast<std::size_t>(v)];
        if (tu == tv) {
            continue;
        }
        Candidate c;
        c.weight = dist[static_cast<std::size_t>(u)] + 1 + dist[static_cast<std::size_t>(v)];
        c.t1 = std::min(tu, tv);
        c.t2 = std::max(tu, tv);
        c.u = u;
        c.v = v;
        candidates.push_back(c);
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.weight, a.t1, a.t2, a.u, a.v) <
               std::tie(b.weight, b.t1, b.t2, b.u, b.v);
    });

    // Kruskal over the terminal distance graph, expanding each accepted
    // connection back to its path in g.
    std::vector<int> uf(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        uf[static_cast<std::size_t>(i)] = i;
    }
    auto find = [&uf](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) {
            uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
            x = uf[static_cast<std::size_t>(x)];
        }
        return x;
    };

    Graph expanded(n);
    int joined = 0;
    for (const Candidate& c : candidates) {
        int ra = find(c.t1);
        int rb = find(c.t2);
        if (ra == rb) {
            continue;
        }
        uf[static_cast<std::size_t>(ra)] = rb;
        ++joined;
        expanded.add_edge_if_absent(c.u, c.v);
        for (int x : {c.u, c.v}) {
            int cur = x;
            while (parent[static_cast<std::size_t>(cur)] >= 0) {
                expanded.add_edge_if_absent(cur, parent[static_cast<std::size_t>(cur)]);
                cur = parent[static_cast<std::size_t>(cur)];
            }
        }
        if (joined == static_cast<int>(sorted_terminals.size()) - 1) {
            break;
        }
    }

    // Spanning tree of the expanded subgraph, then iterative pruning of
    // non-terminal leaves.
    std::vector<bool> is_terminal(static_cast<std::size_t>(n), false);
    for (int t : sorted_terminals) {
        is_terminal[static_cast<std::size_t>(t)] = true;
    }
    BfsTree tree = bfs_tree(expanded, sorted_terminals.front());
    std::vector<int> tdeg(static_cast<std::size_t>(n), 0);
    std::vector<bool> alive(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) {
        if (tree.level[static_cast<std::size_t>(v)] >= 0) {
            alive[static_cast<std::size_t>(v)] = true;
            if (tree.parent[static_cast<std::size_t>(v)] >= 0) {
                ++tdeg[static_cast<std::size_t>(v)];
                ++tdeg[static_cast<std::size_t>(tree.parent[static_cast<std::size_t>(v)])];
            }
        }
    }
    std::queue<int> removable;
    for (int v = 0; v < n; ++v) {
        if (alive[static_cast<std::size_t>(v)] && tdeg[static_cast<std::size_t>(v)] <= 1 &&
            !is_terminal[static_cast<std::size_t>(v)]) {
            removable.push(v);
        }
    }
    while (!removable.empty()) {
        int v = removable.front();
        removable.pop();
        if (!alive[static_cast<std::size_t>(v)] || tdeg[static_cast<std::size_t>(v)] > 1) {
            continue;
        }
        alive[static_cast<std::size_t>(v)] = false;
        int p = tree.parent[static_cast<std::size_t>(v)];
        if (p >= 0 && alive[static_cast<std::size_t>(p)]) {
            if (--tdeg[static_cast<std::size_t>(p)] <= 1 && !is_terminal[static_cast<std::size_t>(p)]) {
                removable.push(p);
            }
        }
    }

    for (int v = 0; v < n; ++v) {
        if (!alive[static_cast<std::size_t>(v)]) {
            continue;
        }
        ++result.node_count;
        int p = tree.parent[static_cast<std::size_t>(v)];
        if (p >= 0 && alive[static_cast<std::size_t>(p)]) {
            result.tree.add_edge(v, p);
            ++result.edge_count;
        }
    }
    return result;
}

long long expansion_gates_keep(int k) {
    if (k < 1) {
        throw std::invalid_argument("expansion_gates_keep: need k >= 1");
    }
    long long kk = k;
    return kk * (kk - 1) / 2 + 2 * kk - 1;
}

long long expansion_gates_drop(int k) {
    if (k < 1) {
        throw std::invalid_argument("expansion_gates_drop: need k >= 1");
    }
    long long kk = k;
    return kk * (kk - 1) / 2 + kk;
}

GateModelReport star_expansion_gate_cost(const Graph& g, std::uint64_t seed) {
    GateModelReport report;
    int n = g.node_count();
    if (n <= 2) {
        return report;  // at most one Bell pair; nothing to expand
    }
    Graph t = spanning_tree(g);
    std::vector<int> tree_leaves = leaves(t);
    Rng rng(seed ^ 0x8f14e45fceea167aull);
    int start = tree_leaves[static_cast<std::size_t>(rng.next_below(tree_leaves.size()))];

    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    int covered_count = 1;
    covered[static_cast<std::size_t>(start)] = true;

    // BFS order over the tree from the chosen leaf; every internal node that
    // still adds coverage is expanded at its tree degree.
    BfsTree order = bfs_tree(t, start);
    std::vector<int> by_level(static_cast<std::size_t>(n));
    std::iota(by_level.begin(), by_level.end(), 0);
    std::sort(by_level.begin(), by_level.end(), [&order](int a, int b) {
        if (order.level[static_cast<std::size_t>(a)] != order.level[static_cast<std::size_t>(b)]) {
            return order.level[static_cast<std::size_t>(a)] < order.level[static_cast<std::size_t>(b)];
        }
        return a < b;
    });
    for (int v : by_level) {
        if (covered_count == n) {
            break;
        }
        if (t.degree(v) < 2) {
            continue;
        }
        bool fresh = !covered[static_cast<std::size_t>(v)];
        for (int u : t.neighbors(v)) {
            fresh = fresh || !covered[static_cast<std::size_t>(u)];
        }
        if (!fresh) {
            continue;
        }
        long long charge = expansion_gates_keep(t.degree(v));
        report.total_gates += charge;
        report.expansion_log.emplace_back(v, t.degree(v), charge);
        if (!covered[static_cast<std::size_t>(v)]) {
            covered[static_cast<std::size_t>(v)] = true;
            ++covered_count;
        }
        for (int u : t.neighbors(v)) {
            if (!covered[static_cast<std::size_t>(u)]) {
                covered[static_cast<std::size_t>(u)] = true;
                ++covered_count;
            }
        }
    }
    return report;
}

long long transfer_gate_cost_chain(int n) {
    if (n < 2) {
        throw std::invalid_argument("transfer_gate_cost_chain: need n >= 2");
    }
    long long nn = n;
    return nn * (nn - 3) / 2 + 1;
}

long long transfer_gate_cost_tree(const Graph& tree, int root) {
    if (!tree.has_node(root)) {
        throw std::invalid_argument("transfer_gate_cost_tree: root out of range");
    }
    BfsTree t = bfs_tree(tree, root);
    long long total = 0;
    for (int v = 0; v < tree.node_count(); ++v) {
        int depth = t.level[static_cast<std::size_t>(v)];
        if (depth > 1) {
            total += depth - 1;
        }
    }
    return total;
}

std::vector<int> greedy_dominating_set(const Graph& g) {
    int n = g.node_count();
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    int covered_count = 0;
    std::vector<int> chosen;
    while (covered_count < n) {
        int best = -1;
        int best_gain = -1;
        for (int v = 0; v < n; ++v) {
            int gain = covered[static_cast<std::size_t>(v)] ? 0 : 1;
            for (int u : g.neighbors(v)) {
                gain += covered[static_cast<std::size_t>(u)] ? 0 : 1;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = v;
            }
        }
        chosen.push_back(best);
        if (!covered[static_cast<std::size_t>(best)]) {
            covered[static_cast<std::size_t>(best)] = true;
            ++covered_count;
        }
        for (int u : g.neighbors(best)) {
            if (!covered[static_cast<std::size_t>(u)]) {
                covered[static_cast<std::size_t>(u)] = true;
                ++covered_count;
            }
        }
    }
    return chosen;
}

bool is_dominating_set(const Graph& g, const std::vector<int>& set) {
    std::vector<bool> covered(static_cast<std::size_t>(g.node_count()), false);
    for (int v : set) {
        if (!g.has_node(v)) {
            return false;
        }
        covered[static_cast<std::size_t>(v)] = true;
        for (int u : g.neighbors(v)) {
            covered[static_cast<std::size_t>(u)] = true;
        }
    }
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

namespace {

void mds_search(const std::vector<std::uint32_t>& closed, std::uint32_t covered,
                std::uint32_t full, int count, int& best) {
    if (covered == full) {
        best = std::min(best, count);
        return;
    }
    if (count + 1 >= best) {
        return;
    }
    // Branch on the uncovered vertex with the fewest possible dominators.
    int n = static_cast<int>(closed.size());
    int pick = -1;
    int pick_options = n + 1;
    for (int v = 0; v < n; ++v) {
        if (covered & (1u << v)) {
            continue;
        }
        int options = 0;
        for (int u = 0; u < n; ++u) {
            if (closed[static_cast<std::size_t>(u)] & (1u << v)) {
                ++options;
            }
        }
        if (options < pick_options) {
            pick_options = options;
            pick = v;
        }
    }
    std::vector<int> dominators;
    for (int u = 0; u < n; ++u) {
        if (closed[static_cast<std::size_t>(u)] & (1u << pick)) {
            dominators.push_back(u);
        }
    }
    std::sort(dominators.begin(), dominators.end(), [&](int a, int b) {
        return std::popcount(closed[static_cast<std::size_t>(a)] & ~covered) >
               std::popcount(closed[static_cast<std::size_t>(b)] & ~covered);
    });
    for (int u : dominators) {
        mds_search(closed, covered | closed[static_cast<std::size_t>(u)], full, count + 1, best);
    }
}

}  // namespace

int exact_dominating_number(const Graph& g, int max_nodes) {
    int n = g.node_count();
    if (n > max_nodes || n > 31) {
        throw std::invalid_argument("exact_dominating_number: graph too large for exact search");
    }
    if (n == 0) {
        return 0;
    }
    std::vector<std::uint32_t> closed(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        closed[static_cast<std::size_t>(v)] = 1u << v;
        for (int u : g.neighbors(v)) {
            closed[static_cast<std::size_t>(v)] |= 1u << u;
        }
    }
    int best = static_cast<int>(greedy_dominating_set(g).size());
    mds_search(closed, 0, (n == 31) ? 0x7fffffffu : ((1u << n) - 1u), 0, best);
    return best;
}

SourceCountBounds source_count_bounds(const Graph& tree) {
    if (tree.node_count() == 0 ||
        tree.edge_count() != static_cast<std::size_t>(tree.node_count()) - 1 ||
        !is_connected(tree)) {
        throw std::invalid_argument("source_count_bounds: input must be a tree");
    }
    SourceCountBounds bounds;
    bounds.mds_greedy = static_cast<int>(greedy_dominating_set(tree).size());
    bounds.internal_count = static_cast<int>(internal_nodes(tree).size());
    return bounds;
}

}  // namespace ghznet
