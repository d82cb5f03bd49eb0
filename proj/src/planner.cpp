#include "ghznet/planner.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "ghznet/rng.hpp"

namespace ghznet {

namespace {

inline void count_steps(PlanStats* stats, std::uint64_t k = 1) {
    if (stats != nullptr) {
        stats->elementary_steps += k;
    }
}

}  // namespace

bool Star::contains(int v) const {
    if (v == center) {
        return true;
    }
    return std::find(leaves.begin(), leaves.end(), v) != leaves.end();
}

std::vector<int> Star::nodes() const {
    std::vector<int> out;
    out.reserve(leaves.size() + 1);
    out.push_back(center);
    out.insert(out.end(), leaves.begin(), leaves.end());
    return out;
}

std::vector<Star> select_stars(const Graph& g, std::uint64_t seed, PlanStats* stats) {
    int n = g.node_count();
    if (n < 2 || !is_connected(g)) {
        throw std::invalid_argument("select_stars: graph must be connected with at least 2 nodes");
    }

    DegreeTable table = degree_table(g, seed);
    count_steps(stats, static_cast<std::uint64_t>(n) + g.edge_count());

    // Mutable copy of the adjacency; deleted nodes keep an empty list.
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        adj[static_cast<std::size_t>(v)].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    }

    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    int covered_count = 0;
    auto cover = [&](int v) {
        if (!covered[static_cast<std::size_t>(v)]) {
            covered[static_cast<std::size_t>(v)] = true;
            ++covered_count;
        }
    };

    std::vector<Star> stars;
    std::size_t cursor = 0;
    while (covered_count < n && cursor < table.entries.size()) {
        int v = table.entries[cursor++].first;
        count_steps(stats);
        const auto& nbrs = adj[static_cast<std::size_t>(v)];
        if (nbrs.empty()) {
            continue;  // all incident edges already consumed; v is covered
        }
        Star star;
        star.center = v;
        star.leaves.assign(nbrs.begin(), nbrs.end());
        cover(v);
        for (int u : star.leaves) {
            cover(u);
            adj[static_cast<std::size_t>(u)].erase(v);
            count_steps(stats);
        }
        adj[static_cast<std::size_t>(v)].clear();
        stars.push_back(std::move(star));
    }

    // Residual edges become two-node stars; the endpoint with the higher
    // original degree is the center (seeded tie-break).
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int u = 0; u < n; ++u) {
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (v < u) {
                continue;
            }
            count_steps(stats);
            Star star;
            bool u_first = g.degree(u) > g.degree(v) ||
                           (g.degree(u) == g.degree(v) && (rng.next_u64() & 1ull) == 0);
            star.center = u_first ? u : v;
            star.leaves.push_back(u_first ? v : u);
            stars.push_back(std::move(star));
        }
    }
    return stars;
}

Plan modify_stars(const Graph& g, std::vector<Star> sg, std::uint64_t seed, PlanStats* stats) {
    if (sg.empty()) {
        throw std::invalid_argument("modify_stars: star list is empty");
    }
    int n = g.node_count();
    Rng rng(seed ^ 0xda3e39cb94b95bdbull);

    // Seeded priority per star for all tie-breaking below.
    std::vector<int> prio(sg.size());
    std::iota(prio.begin(), prio.end(), 0);
    rng.shuffle(prio);

    std::size_t first = 0;
    for (std::size_t i = 1; i < sg.size(); ++i) {
        count_steps(stats);
        if (sg[i].size() > sg[first].size() ||
            (sg[i].size() == sg[first].size() && prio[i] < prio[first])) {
            first = i;
        }
    }

    // covered_by[v]: index into plan.stars of the first merged star holding v.
    std::vector<int> covered_by(static_cast<std::size_t>(n), -1);
    // For every node, the pending stars containing it, to detect eligibility.
    std::vector<std::vector<int>> stars_of_node(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < sg.size(); ++i) {
        for (int v : sg[i].nodes()) {
            stars_of_node[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
            count_steps(stats);
        }
    }

    std::vector<bool> consumed(sg.size(), false);
    // Max-heap of stars that share a node with the merged set, keyed by
    // (size, seeded priority); lazy deletion.
    using HeapEntry = std::tuple<int, int, int>;  // (size, -prio, star index)
    std::priority_queue<HeapEntry> eligible;
    std::vector<bool> queued(sg.size(), false);

    Plan plan;
    plan.subgraph = g;
    plan.root_star = 0;

    auto absorb = [&](int star_idx, int plan_idx) {
        consumed[static_cast<std::size_t>(star_idx)] = true;
        for (int v : plan.stars[static_cast<std::size_t>(plan_idx)].nodes()) {
            count_steps(stats);
            if (covered_by[static_cast<std::size_t>(v)] < 0) {
                covered_by[static_cast<std::size_t>(v)] = plan_idx;
            }
            for (int other : stars_of_node[static_cast<std::size_t>(v)]) {
                count_steps(stats);
                if (!consumed[static_cast<std::size_t>(other)] &&
                    !queued[static_cast<std::size_t>(other)]) {
                    queued[static_cast<std::size_t>(other)] = true;
                    eligible.emplace(sg[static_cast<std::size_t>(other)].size(),
                                     -prio[static_cast<std::size_t>(other)], other);
                }
            }
        }
    };

    plan.stars.push_back(sg[first]);
    absorb(static_cast<int>(first), 0);

    std::size_t remaining = sg.size() - 1;
    while (remaining > 0) {
        if (eligible.empty()) {
            throw std::invalid_argument("modify_stars: star cover is not connected");
        }
        auto [size, neg_prio, idx] = eligible.top();
        eligible.pop();
        count_steps(stats);
        if (consumed[static_cast<std::size_t>(idx)]) {
            continue;
        }
        --remaining;

        Star star = sg[static_cast<std::size_t>(idx)];
        std::vector<int> common;
        std::vector<int> fresh_leaves;
        for (int v : star.leaves) {
            count_steps(stats);
            if (covered_by[static_cast<std::size_t>(v)] >= 0) {
                common.push_back(v);
            } else {
                fresh_leaves.push_back(v);
            }
        }
        bool center_common = covered_by[static_cast<std::size_t>(star.center)] >= 0;

        if (center_common && fresh_leaves.empty()) {
            // Every node already present in the merged set: drop the star.
            consumed[static_cast<std::size_t>(idx)] = true;
            continue;
        }

        int shared;
        if (center_common) {
            // Keep the center as the single shared node; trim shared leaves.
            star.leaves = std::move(fresh_leaves);
            shared = star.center;
        } else {
            // Keep one seeded-random shared leaf, trim the rest.
            int keep = common[static_cast<std::size_t>(rng.next_below(common.size()))];
            fresh_leaves.push_back(keep);
            star.leaves = std::move(fresh_leaves);
            shared = keep;
        }

        int plan_idx = static_cast<int>(plan.stars.size());
        plan.stars.push_back(std::move(star));
        plan.fusion_edges.push_back(
            {covered_by[static_cast<std::size_t>(shared)], plan_idx, shared});
        absorb(idx, plan_idx);
    }
    return plan;
}

Plan plan_complete(const Graph& g, std::uint64_t seed, PlanStats* stats) {
    std::vector<Star> sg = select_stars(g, seed, stats);
    return modify_stars(g, std::move(sg), seed, stats);
}

SubgraphResult connected_subgraph(const Graph& g, const std::vector<int>& desired,
                                  std::uint64_t seed) {
    if (desired.empty()) {
        throw std::invalid_argument("connected_subgraph: desired set is empty");
    }
    for (int v : desired) {
        if (!g.has_node(v)) {
            throw std::invalid_argument("connected_subgraph: desired node out of range");
        }
    }
    if (!is_connected(g)) {
        throw std::invalid_argument("connected_subgraph: graph must be connected");
    }
    int n = g.node_count();
    std::vector<bool> wanted(static_cast<std::size_t>(n), false);
    for (int v : desired) {
        wanted[static_cast<std::size_t>(v)] = true;
    }

    auto induced_on = [&](const std::vector<bool>& keep) {
        SubgraphResult result;
        std::vector<int> dense(static_cast<std::size_t>(n), -1);
        for (int v = 0; v < n; ++v) {
            if (keep[static_cast<std::size_t>(v)]) {
                dense[static_cast<std::size_t>(v)] = static_cast<int>(result.orig_of.size());
                result.orig_of.push_back(v);
            }
        }
        result.graph = Graph(static_cast<int>(result.orig_of.size()));
        for (std::size_t i = 0; i < result.orig_of.size(); ++i) {
            for (int w : g.neighbors(result.orig_of[i])) {
                if (result.orig_of[i] < w && keep[static_cast<std::size_t>(w)]) {
                    result.graph.add_edge(static_cast<int>(i), dense[static_cast<std::size_t>(w)]);
                }
            }
        }
        return result;
    };

    // If the desired nodes already induce a connected subgraph, use it as is.
    SubgraphResult induced = induced_on(wanted);
    if (is_connected(induced.graph)) {
        return induced;
    }

    // BFS tree from a seeded desired root, pruned of non-desired leaves.
    // Any parent one level up realizes a valid BFS discovery order, so the
    // survivor set is shaped by two heuristics over the level structure and
    // the smaller result wins: (a) per-level greedy cover of the nodes still
    // needing a parent, (b) per-desired-node ascent to the kept set along a
    // path opening the fewest new nodes (0/1 BFS). Both yield exactly the
    // ancestors of the desired set in some BFS tree.
    Rng rng(seed ^ 0xc2b2ae3d27d4eb4full);
    int root = desired[static_cast<std::size_t>(rng.next_below(desired.size()))];
    BfsTree tree = bfs_tree(g, root);
    int max_level = 0;
    for (int v = 0; v < n; ++v) {
        max_level = std::max(max_level, tree.level[static_cast<std::size_t>(v)]);
    }
    auto level_of = [&tree](int v) { return tree.level[static_cast<std::size_t>(v)]; };

    // Heuristic (a): walk levels deepest-first, covering parentless nodes
    // with the level-up neighbor that serves the most of them.
    auto cover_heuristic = [&]() {
        std::vector<bool> kept(static_cast<std::size_t>(n), false);
        std::vector<std::vector<int>> needed(static_cast<std::size_t>(max_level) + 1);
        for (int v : desired) {
            kept[static_cast<std::size_t>(v)] = true;
            needed[static_cast<std::size_t>(level_of(v))].push_back(v);
        }
        for (int level = max_level; level >= 1; --level) {
            std::vector<int> pending;
            for (int v : needed[static_cast<std::size_t>(level)]) {
                bool reused = false;
                for (int u : g.neighbors(v)) {
                    if (level_of(u) == level - 1 && kept[static_cast<std::size_t>(u)]) {
                        reused = true;
                        break;
                    }
                }
                if (!reused) {
                    pending.push_back(v);
                }
            }
            std::vector<int> cover_count(static_cast<std::size_t>(n), 0);
            while (!pending.empty()) {
                std::fill(cover_count.begin(), cover_count.end(), 0);
                int best = -1;
                for (int v : pending) {
                    for (int u : g.neighbors(v)) {
                        if (level_of(u) != level - 1) {
                            continue;
                        }
                        ++cover_count[static_cast<std::size_t>(u)];
                        if (best < 0 ||
                            cover_count[static_cast<std::size_t>(u)] >
                                cover_count[static_cast<std::size_t>(best)] ||
                            (cover_count[static_cast<std::size_t>(u)] ==
                                 cover_count[static_cast<std::size_t>(best)] &&
                             u < best)) {
                            best = u;
                        }
                    }
                }
                kept[static_cast<std::size_t>(best)] = true;
                needed[static_cast<std::size_t>(level) - 1].push_back(best);
                std::vector<int> still_pending;
                for (int v : pending) {
                    if (!g.has_edge(v, best)) {
                        still_pending.push_back(v);
                    }
                }
                pending = std::move(still_pending);
            }
        }
        return kept;
    };

    // Heuristic (b): deepest-first 0/1-BFS ascent, zero cost through nodes
    // already kept.
    auto ascent_heuristic = [&]() {
        std::vector<bool> kept(static_cast<std::size_t>(n), false);
        for (int v : desired) {
            kept[static_cast<std::size_t>(v)] = true;
        }
        std::vector<int> order = desired;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return level_of(a) != level_of(b) ? level_of(a) > level_of(b) : a < b;
        });
        std::vector<int> cost(static_cast<std::size_t>(n));
        std::vector<int> via(static_cast<std::size_t>(n));
        for (int v : order) {
            if (v == root) {
                continue;
            }
            cost.assign(static_cast<std::size_t>(n), -1);
            via.assign(static_cast<std::size_t>(n), -1);
            std::deque<int> frontier;
            cost[static_cast<std::size_t>(v)] = 0;
            frontier.push_back(v);
            int hit = -1;
            while (!frontier.empty()) {
                int u = frontier.front();
                frontier.pop_front();
                if (u != v && kept[static_cast<std::size_t>(u)]) {
                    hit = u;
                    break;
                }
                for (int w : g.neighbors(u)) {
                    if (level_of(w) != level_of(u) - 1) {
                        continue;
                    }
                    int step = kept[static_cast<std::size_t>(w)] ? 0 : 1;
                    int next = cost[static_cast<std::size_t>(u)] + step;
                    if (cost[static_cast<std::size_t>(w)] < 0 ||
                        next < cost[static_cast<std::size_t>(w)]) {
                        cost[static_cast<std::size_t>(w)] = next;
                        via[static_cast<std::size_t>(w)] = u;
                        if (step == 0) {
                            frontier.push_front(w);
                        } else {
                            frontier.push_back(w);
                        }
                    }
                }
            }
            for (int u = hit; u >= 0 && u != v; u = via[static_cast<std::size_t>(u)]) {
                kept[static_cast<std::size_t>(u)] = true;
            }
        }
        return kept;
    };

    // Redundancy sweep: drop a non-desired survivor whenever every kept node
    // one level below it still has another kept neighbor one level up, so
    // the level-up parent structure stays intact.
    auto sweep = [&](std::vector<bool>& kept) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int u = 0; u < n; ++u) {
                if (!kept[static_cast<std::size_t>(u)] || wanted[static_cast<std::size_t>(u)]) {
                    continue;
                }
                bool essential = false;
                for (int v : g.neighbors(u)) {
                    if (!kept[static_cast<std::size_t>(v)] || level_of(v) != level_of(u) + 1) {
                        continue;
                    }
                    bool alternative = false;
                    for (int w : g.neighbors(v)) {
                        if (w != u && kept[static_cast<std::size_t>(w)] &&
                            level_of(w) == level_of(u)) {
                            alternative = true;
                            break;
                        }
                    }
                    if (!alternative) {
                        essential = true;
                        break;
                    }
                }
                if (!essential) {
                    kept[static_cast<std::size_t>(u)] = false;
                    changed = true;
                }
            }
        }
    };

    std::vector<bool> kept_cover = cover_heuristic();
    sweep(kept_cover);
    std::vector<bool> kept_ascent = ascent_heuristic();
    sweep(kept_ascent);
    std::size_t size_cover = static_cast<std::size_t>(std::count(kept_cover.begin(), kept_cover.end(), true));
    std::size_t size_ascent = static_cast<std::size_t>(std::count(kept_ascent.begin(), kept_ascent.end(), true));
    return induced_on(size_ascent < size_cover ? kept_ascent : kept_cover);
}

SubsetPlan plan_subset(const Graph& g, const std::vector<int>& desired, std::uint64_t seed) {
    std::vector<int> unique_desired = desired;
    std::sort(unique_desired.begin(), unique_desired.end());
    unique_desired.erase(std::unique(unique_desired.begin(), unique_desired.end()),
                         unique_desired.end());
    SubgraphResult sub = connected_subgraph(g, unique_desired, seed);
    SubsetPlan result;
    result.subgraph_nodes = sub.orig_of;
    result.plan = plan_complete(sub.graph, seed);
    result.cost = cost_report(result.plan);
    result.cost.removal_measurements =
        static_cast<long long>(result.subgraph_nodes.size()) -
        static_cast<long long>(unique_desired.size());
    return result;
}

CostReport cost_report(const Plan& plan) {
    CostReport report;
    report.sources = static_cast<long long>(plan.stars.size());
    std::size_t span = 0;
    for (const Star& star : plan.stars) {
        report.gates += star.size() - 2;
        report.bell_pairs += star.size() - 1;
        report.classical_bits += star.size() - 2;
        span += static_cast<std::size_t>(star.size());
    }
    report.gates += static_cast<long long>(plan.fusion_edges.size());
    report.subgraph_size = static_cast<int>(span - plan.fusion_edges.size());

    // Fusion-phase bits: each leaf star of the fusion tree receives one bit
    // per fusion on its path to the root star.
    std::size_t k = plan.stars.size();
    std::vector<std::vector<int>> children(k);
    std::vector<int> fanout(k, 0);
    for (const FusionEdge& e : plan.fusion_edges) {
        children[static_cast<std::size_t>(e.star_a)].push_back(e.star_b);
        ++fanout[static_cast<std::size_t>(e.star_a)];
    }
    std::vector<int> depth(k, 0);
    std::queue<int> q;
    q.push(plan.root_star);
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (int c : children[static_cast<std::size_t>(s)]) {
            depth[static_cast<std::size_t>(c)] = depth[static_cast<std::size_t>(s)] + 1;
            q.push(c);
        }
    }
    for (std::size_t s = 0; s < k; ++s) {
        if (fanout[s] == 0 && (k > 1 || static_cast<int>(s) != plan.root_star)) {
            report.classical_bits += depth[s];
        }
    }
    return report;
}

Graph plan_tree_graph(const Plan& plan) {
    Graph tree(plan.subgraph.node_count());
    for (const Star& star : plan.stars) {
        for (int leaf : star.leaves) {
            tree.add_edge(star.center, leaf);
        }
    }
    return tree;
}

}  // namespace ghznet
