#include "ghznet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ghznet/rng.hpp"

namespace ghznet {

std::size_t Graph::edge_count() const {
    std::size_t total = 0;
    for (const auto& nbrs : adj_) {
        total += nbrs.size();
    }
    return total / 2;
}

bool Graph::has_edge(int u, int v) const {
    if (!has_node(u) || !has_node(v)) {
        return false;
    }
    const auto& nbrs = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

void Graph::add_edge(int u, int v) {
    if (!has_node(u) || !has_node(v)) {
        throw std::invalid_argument("add_edge: node id out of range");
    }
    if (u == v) {
        throw std::invalid_argument("add_edge: self-loops are not allowed");
    }
    if (has_edge(u, v)) {
        throw std::invalid_argument("add_edge: duplicate edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "}");
    }
    auto& nu = adj_[static_cast<std::size_t>(u)];
    nu.insert(std::upper_bound(nu.begin(), nu.end(), v), v);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.insert(std::upper_bound(nv.begin(), nv.end(), u), u);
}

bool Graph::add_edge_if_absent(int u, int v) {
    if (u == v || has_edge(u, v)) {
        return false;
    }
    add_edge(u, v);
    return true;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < node_count(); ++u) {
        for (int v : neighbors(u)) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

DegreeTable degree_table(const Graph& g, std::uint64_t seed) {
    std::vector<int> tiebreak(static_cast<std::size_t>(g.node_count()));
    std::iota(tiebreak.begin(), tiebreak.end(), 0);
    Rng rng(seed);
    rng.shuffle(tiebreak);
    std::vector<int> rank(tiebreak.size());
    for (std::size_t i = 0; i < tiebreak.size(); ++i) {
        rank[static_cast<std::size_t>(tiebreak[i])] = static_cast<int>(i);
    }

    DegreeTable table;
    table.entries.reserve(tiebreak.size());
    for (int v = 0; v < g.node_count(); ++v) {
        table.entries.emplace_back(v, g.degree(v));
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [&rank](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                  if (a.second != b.second) {
                      return a.second > b.second;
                  }
                  return rank[static_cast<std::size_t>(a.first)] <
                         rank[static_cast<std::size_t>(b.first)];
              });
    return table;
}

BfsTree bfs_tree(const Graph& g, int root) {
    if (!g.has_node(root)) {
        throw std::invalid_argument("bfs_tree: root " + std::to_string(root) + " not in graph");
    }
    BfsTree tree;
    tree.root = root;
    tree.parent.assign(static_cast<std::size_t>(g.node_count()), -1);
    tree.level.assign(static_cast<std::size_t>(g.node_count()), -1);
    tree.level[static_cast<std::size_t>(root)] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u)) {
            if (tree.level[static_cast<std::size_t>(v)] < 0) {
                tree.level[static_cast<std::size_t>(v)] = tree.level[static_cast<std::size_t>(u)] + 1;
                tree.parent[static_cast<std::size_t>(v)] = u;
                q.push(v);
            }
        }
    }
    return tree;
}

bool is_connected(const Graph& g) {
    if (g.node_count() == 0) {
        return true;
    }
    BfsTree tree = bfs_tree(g, 0);
    for (int v = 0; v < g.node_count(); ++v) {
        if (tree.level[static_cast<std::size_t>(v)] < 0) {
            return false;
        }
    }
    return true;
}

ComponentResult largest_connected_component(const Graph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.node_count()), -1);
    int comp_count = 0;
    std::vector<int> comp_size;
    for (int s = 0; s < g.node_count(); ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) {
            continue;
        }
        int id = comp_count++;
        comp_size.push_back(0);
        std::queue<int> q;
        q.push(s);
        comp[static_cast<std::size_t>(s)] = id;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            ++comp_size[static_cast<std::size_t>(id)];
            for (int v : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(v)] < 0) {
                    comp[static_cast<std::size_t>(v)] = id;
                    q.push(v);
                }
            }
        }
    }

    ComponentResult result;
    if (comp_count == 0) {
        return result;
    }
    // Components are discovered in order of their smallest node id, so the
    // first maximum realizes the tie-break rule.
    int best = 0;
    for (int id = 1; id < comp_count; ++id) {
        if (comp_size[static_cast<std::size_t>(id)] > comp_size[static_cast<std::size_t>(best)]) {
            best = id;
        }
    }

    std::vector<int> new_id(static_cast<std::size_t>(g.node_count()), -1);
    for (int v = 0; v < g.node_count(); ++v) {
        if (comp[static_cast<std::size_t>(v)] == best) {
            new_id[static_cast<std::size_t>(v)] = static_cast<int>(result.orig_of.size());
            result.orig_of.push_back(v);
        }
    }
    result.graph = Graph(static_cast<int>(result.orig_of.size()));
    for (std::size_t i = 0; i < result.orig_of.size(); ++i) {
        int v = result.orig_of[i];
        for (int w : g.neighbors(v)) {
            if (v < w && new_id[static_cast<std::size_t>(w)] >= 0) {
                result.graph.add_edge(static_cast<int>(i), new_id[static_cast<std::size_t>(w)]);
            }
        }
    }
    return result;
}

int diameter(const Graph& g) {
    if (g.node_count() == 0) {
        throw std::invalid_argument("diameter: empty graph");
    }
    if (!is_connected(g)) {
        throw std::invalid_argument("diameter: graph is disconnected");
    }
    int best = 0;
    for (int s = 0; s < g.node_count(); ++s) {
        BfsTree tree = bfs_tree(g, s);
        for (int lvl : tree.level) {
            best = std::max(best, lvl);
        }
    }
    return best;
}

Graph spanning_tree(const Graph& g) {
    if (g.node_count() == 0 || !is_connected(g)) {
        throw std::invalid_argument("spanning_tree: graph must be connected and nonempty");
    }
    BfsTree tree = bfs_tree(g, 0);
    Graph t(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) {
        if (tree.parent[static_cast<std::size_t>(v)] >= 0) {
            t.add_edge(v, tree.parent[static_cast<std::size_t>(v)]);
        }
    }
    return t;
}

std::vector<int> internal_nodes(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.node_count(); ++v) {
        if (g.degree(v) >= 2) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<int> leaves(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.node_count(); ++v) {
        if (g.degree(v) == 1) {
            out.push_back(v);
        }
    }
    return out;
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("graph JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
        throw std::invalid_argument("graph JSON must be an object with \"n\" and \"edges\"");
    }
    int n = j.at("n").get<int>();
    if (n < 0) {
        throw std::invalid_argument("graph JSON: \"n\" must be nonnegative");
    }
    Graph g(n);
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("graph JSON: each edge must be a pair [u,v]");
        }
        int u = e.at(0).get<int>();
        int v = e.at(1).get<int>();
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw std::invalid_argument("graph JSON: edge endpoint out of range");
        }
        if (u == v) {
            throw std::invalid_argument("graph JSON: self-loop at node " + std::to_string(u));
        }
        if (g.has_edge(u, v)) {
            throw std::invalid_argument("graph JSON: duplicate edge {" + std::to_string(u) + "," +
                                        std::to_string(v) + "}");
        }
        g.add_edge(u, v);
    }
    return g;
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.node_count();
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : g.edges()) {
        j["edges"].push_back({u, v});
    }
    return j.dump();
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open graph file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return graph_from_json(buf.str());
}

void save_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write graph file: " + path);
    }
    out << graph_to_json(g) << "\n";
}

}  // namespace ghznet
