#pragma once

#include <cstdint>
#include <vector>

#include "ghznet/graph.hpp"

namespace ghznet {

// Seeded random-network generators. All three are pure functions of
// (params, seed): two calls with the same arguments agree edge-for-edge.

struct ErParams {
    int n = 0;
    double p = 0.0;  // edge probability in [0,1]
    std::uint64_t seed = 0;
};

struct BaParams {
    int n = 0;
    int c = 1;  // attachment count, 1 <= c <= n-1
    std::uint64_t seed = 0;
};

struct WaxmanParams {
    int n = 0;
    double diameter_km = 1.0;     // diameter of the disc the nodes live on
    double beta = 1.0;            // density parameter in (0,1]
    double attenuation_km = 1.0;  // length scale of the edge probability
    std::uint64_t seed = 0;
};

// Connected Erdos-Renyi variant: a connectivity backbone is built first
// (every node after the first links to a uniformly random already-connected
// node), then each remaining pair is added independently with probability p.
// Output is always connected.
Graph gen_er_connected(const ErParams& params);

// Barabasi-Albert preferential attachment: complete graph on the first c+1
// nodes, then each new node attaches to c distinct existing nodes sampled
// with probability proportional to current degree. Minimum degree is c.
Graph gen_ba(const BaParams& params);

struct WaxmanResult {
    Graph graph;  // may be disconnected
    std::vector<std::pair<double, double>> coords;
};

// Distance for a node pair placed on the disc.
double waxman_distance(const std::pair<double, double>& a, const std::pair<double, double>& b);

// Edge probability beta * exp(-d / attenuation).
double waxman_edge_prob(double distance_km, const WaxmanParams& params);

// Edge draws for fixed coordinates; exposed separately so the edge statistics
// can be validated independently of the placement step.
Graph waxman_edges_from_coords(const std::vector<std::pair<double, double>>& coords,
                               const WaxmanParams& params, std::uint64_t edge_seed);

// Nodes placed uniformly over a disc of the given diameter (rejection
// sampling from the bounding square), pairs joined with the Waxman
// probability.
WaxmanResult gen_waxman(const WaxmanParams& params);

}  // namespace ghznet
