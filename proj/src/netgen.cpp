#include "ghznet/netgen.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ghznet/rng.hpp"

namespace ghznet {

Graph gen_er_connected(const ErParams& params) {
    if (params.n < 2) {
        throw std::invalid_argument("gen_er_connected: need n >= 2");
    }
    if (params.p < 0.0 || params.p > 1.0) {
        throw std::invalid_argument("gen_er_connected: p must be in [0,1]");
    }
    Rng rng(params.seed);
    Graph g(params.n);

    // Connectivity step. Nodes are taken in a seeded random order and each
    // one links to a uniformly random node among those already linked, so
    // the backbone is connected by construction.
    std::vector<int> order(static_cast<std::size_t>(params.n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t i = 1; i < order.size(); ++i) {
        int partner = order[static_cast<std::size_t>(rng.next_below(i))];
        g.add_edge_if_absent(order[i], partner);
    }

    // Density step over the remaining pairs.
    for (int u = 0; u < params.n; ++u) {
        for (int v = u + 1; v < params.n; ++v) {
            if (!g.has_edge(u, v) && rng.next_double() < params.p) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

Graph gen_ba(const BaParams& params) {
    if (params.c < 1) {
        throw std::invalid_argument("gen_ba: need c >= 1");
    }
    if (params.n <= params.c) {
        throw std::invalid_argument("gen_ba: need n >= c+1");
    }
    Rng rng(params.seed);
    Graph g(params.n);
    for (int u = 0; u < params.c + 1; ++u) {
        for (int v = u + 1; v < params.c + 1; ++v) {
            g.add_edge(u, v);
        }
    }

    // endpoint pool: every edge contributes both endpoints, so a uniform
    // draw from the pool is a degree-proportional draw over nodes.
    std::vector<int> pool;
    pool.reserve(static_cast<std::size_t>(2 * params.c) * static_cast<std::size_t>(params.n));
    for (const auto& [u, v] : g.edges()) {
        pool.push_back(u);
        pool.push_back(v);
    }

    std::vector<int> targets;
    for (int u = params.c + 1; u < params.n; ++u) {
        targets.clear();
        while (static_cast<int>(targets.size()) < params.c) {
            int candidate = pool[static_cast<std::size_t>(rng.next_below(pool.size()))];
            bool repeat = false;
            for (int t : targets) {
                if (t == candidate) {
                    repeat = true;
                    break;
                }
            }
            if (!repeat) {
                targets.push_back(candidate);
            }
        }
        for (int t : targets) {
            g.add_edge(u, t);
            pool.push_back(u);
            pool.push_back(t);
        }
    }
    return g;
}

double waxman_distance(const std::pair<double, double>& a, const std::pair<double, double>& b) {
    double dx = a.first - b.first;
    double dy = a.second - b.second;
    return std::sqrt(dx * dx + dy * dy);
}

double waxman_edge_prob(double distance_km, const WaxmanParams& params) {
    return params.beta * std::exp(-distance_km / params.attenuation_km);
}

Graph waxman_edges_from_coords(const std::vector<std::pair<double, double>>& coords,
                               const WaxmanParams& params, std::uint64_t edge_seed) {
    Rng rng(edge_seed);
    Graph g(static_cast<int>(coords.size()));
    for (std::size_t u = 0; u < coords.size(); ++u) {
        for (std::size_t v = u + 1; v < coords.size(); ++v) {
            double p = waxman_edge_prob(waxman_distance(coords[u], coords[v]), params);
            if (rng.next_double() < p) {
                g.add_edge(static_cast<int>(u), static_cast<int>(v));
            }
        }
    }
    return g;
}

WaxmanResult gen_waxman(const WaxmanParams& params) {
    if (params.n < 1) {
        throw std::invalid_argument("gen_waxman: need n >= 1");
    }
    if (params.diameter_km <= 0.0 || params.attenuation_km <= 0.0) {
        throw std::invalid_argument("gen_waxman: diameter and attenuation must be positive");
    }
    if (params.beta <= 0.0 || params.beta > 1.0) {
        throw std::invalid_argument("gen_waxman: beta must be in (0,1]");
    }
    Rng rng(params.seed);
    WaxmanResult result;
    result.coords.reserve(static_cast<std::size_t>(params.n));
    double radius = params.diameter_km / 2.0;
    while (static_cast<int>(result.coords.size()) < params.n) {
        double x = (2.0 * rng.next_double() - 1.0) * radius;
        double y = (2.0 * rng.next_double() - 1.0) * radius;
        if (x * x + y * y <= radius * radius) {
            result.coords.emplace_back(x, y);
        }
    }
    result.graph = waxman_edges_from_coords(result.coords, params, rng.next_u64());
    return result;
}

}  // namespace ghznet
