#pragma once

#include <cstdint>
#include <vector>

namespace ghznet {

// Diagonal overlaps of a noisy Bell pair with the four Bell states
// |B(z,x)> = (Z^z X^x (x) 1)|B>, indexed mu[z][x]. For a Bell-diagonal state
// the four entries sum to one; for an arbitrary state they sum to at most one.
struct BellOverlaps {
    double mu[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

    double sum() const { return mu[0][0] + mu[0][1] + mu[1][0] + mu[1][1]; }
};

// Overlaps of a noisy n-qubit GHZ-like state with (|0..0> +- |1..1>)/sqrt(2).
struct GhzOverlaps {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
};

enum class ChannelKind {
    depolarizing,
    dephasing,
    amplitude_damping,
    custom,
};

struct ChannelSpec {
    ChannelKind kind = ChannelKind::depolarizing;
    double parameter = 0.0;  // in [0,1]; unused for custom
    BellOverlaps custom;     // used when kind == custom

    static ChannelSpec depolarizing(double p) { return {ChannelKind::depolarizing, p, {}}; }
    static ChannelSpec dephasing(double q) { return {ChannelKind::dephasing, q, {}}; }
    static ChannelSpec amplitude_damping(double g) { return {ChannelKind::amplitude_damping, g, {}}; }
    static ChannelSpec custom_overlaps(const BellOverlaps& o) { return {ChannelKind::custom, 0.0, o}; }
};

// Bell-basis diagonal of the noisy pair (id (x) channel)(|B><B|).
BellOverlaps mu_from_channel(const ChannelSpec& spec);

// Fidelity of the GHZ state produced by fusing n Bell pairs at a star center,
// given each pair's (z,0) overlaps. Equals the sum over even-parity Bell
// index strings of the overlap products, evaluated in O(n) as
//   (prod_i (mu0+mu1) + prod_i (mu0-mu1)) / 2.
double star_fusion_fidelity(const std::vector<BellOverlaps>& mus);

// Same sum for fusing m GHZ states arranged as a tree, over their
// (lambda0, lambda1) overlaps.
double tree_fusion_fidelity(const std::vector<GhzOverlaps>& lams);

// GHZ overlaps of the state produced by one n-pair star fusion with
// identical pairs; feeds tree_fusion_fidelity for composed protocols.
GhzOverlaps star_fusion_overlaps(int n, double mu0, double mu1);

// Closed form for m identical star fusions of n identical pairs each:
//   ((mu0+mu1)^(nm) + (mu0-mu1)^(nm)) / 2.
// Depends only on the product n*m.
double composed_fidelity(int n, int m, double mu0, double mu1);

// Largest channel parameter for which an n-pair star fusion still reaches
// fidelity F (1/2 < F <= 1). Dephasing has the closed form
// (1 - (2F-1)^(1/n)) / 2; the other channels are solved by bisection of
// their monotone boundary conditions.
double noise_threshold(ChannelKind kind, int n, double target_fidelity);

// n-qubit Pauli word i^phase * X^x * Z^z with bit-packed exponent vectors
// (qubit i lives at bit i).
struct PauliWord {
    int n = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int phase = 0;  // exponent of i, mod 4

    bool operator==(const PauliWord& other) const = default;
};

// Hermitian representative i^(x.z) X^x Z^z of the word with exponents (x,z).
PauliWord canonical_pauli(int n, std::uint64_t x, std::uint64_t z);

// Conjugation through the fan-out CNOT (control qubit 0, targets 1..n-1):
//   x' = (x1, x1^x2, ..., x1^xn),  z' = (z1^...^zn, z2, ..., zn),
// with the phase unchanged. Involution.
PauliWord fanout_cnot_conjugate(const PauliWord& word);

struct PauliChannel {
    int n = 0;
    std::vector<std::pair<PauliWord, double>> terms;  // probabilities sum to 1

    void validate() const;
};

// Pushes every word of a Pauli channel through the fan-out CNOT, turning
// noise after the gate into (generally correlated) noise before it.
PauliChannel absorb_channel_through_fanout(const PauliChannel& channel);

// Fidelity of the graph state distributed from a hub holding one Bell pair
// per outer node: sum over measurement strings x of prod_i mu_i(z_i, x_i)
// with z = A(G) x over GF(2). `adjacency` is A(G) packed row-wise.
double hub_graph_state_fidelity(const std::vector<std::uint64_t>& adjacency,
                                const std::vector<BellOverlaps>& overlaps);

}  // namespace ghznet
