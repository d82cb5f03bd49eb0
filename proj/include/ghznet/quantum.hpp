#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ghznet/graph.hpp"
#include "ghznet/noise.hpp"
#include "ghznet/rng.hpp"

namespace ghznet {

using cplx = std::complex<double>;

// Dense state vector over at most 22 qubits. Qubit 0 is the most significant
// bit of the amplitude index, so kron(a, b) keeps a's qubit labels and
// appends b's.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(int num_qubits);  // |0...0>

    static StateVector from_amplitudes(int num_qubits, std::vector<cplx> amps);

    int num_qubits() const { return nq_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    void apply_1q(const cplx (&u)[2][2], int qubit);
    void apply_h(int qubit);
    void apply_x(int qubit);
    void apply_z(int qubit);
    void apply_cnot(int control, int target);
    void apply_cz(int a, int b);

    double norm2() const;
    void scale(cplx factor);

    // Projects `qubit` onto |bit> and removes it. Returns the branch
    // probability weight; the surviving amplitudes keep their magnitude.
    double project_remove(int qubit, int bit);

    cplx inner(const StateVector& other) const;  // <this|other>

private:
    int nq_ = 0;
    std::vector<cplx> amps_;
};

StateVector bell_vector();
StateVector ghz_vector(int n);
StateVector plus_vector(int n);
// CZ-form graph state of g on |+...+>.
StateVector graph_state_vector(const Graph& g);

// Dense density matrix over at most 12 qubits, row-major.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(int num_qubits);  // zero matrix
    static DensityMatrix from_pure(const StateVector& psi);

    int num_qubits() const { return nq_; }
    std::size_t dim() const { return static_cast<std::size_t>(1) << nq_; }
    cplx& at(std::size_t row, std::size_t col) { return m_[row * dim() + col]; }
    const cplx& at(std::size_t row, std::size_t col) const { return m_[row * dim() + col]; }

    static DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

    void add_scaled(const DensityMatrix& other, double weight);

    void apply_1q(const cplx (&u)[2][2], int qubit);
    void apply_h(int qubit);
    void apply_x(int qubit);
    void apply_z(int qubit);
    void apply_cnot(int control, int target);
    void apply_cz(int a, int b);
    // P rho P^dagger for a canonical-form Pauli word over qubits
    // offset..offset+word.n-1.
    void apply_pauli(const PauliWord& word, int offset = 0);

    // Z-measurement of `qubit`, outcome averaged: both projected blocks are
    // returned with the qubit removed; block z carries probability weight
    // trace(block z). Corrections are applied by the caller before summing.
    std::pair<DensityMatrix, DensityMatrix> measure_remove_z(int qubit) const;

    double trace_real() const;
    double fidelity(const StateVector& psi) const;  // <psi|rho|psi>
    bool is_hermitian(double tol = 1e-10) const;

private:
    int nq_ = 0;
    std::vector<cplx> m_;
};

// Noisy Bell pair (id (x) channel)(|B><B|); qubit 0 = A side, qubit 1 = B side.
DensityMatrix make_bell(const ChannelSpec& spec);

BellOverlaps bell_overlaps_of(const DensityMatrix& pair);
GhzOverlaps ghz_overlaps_of(const DensityMatrix& state);

// Star fusion of Bell pairs: CNOTs from the hub's first qubit to its others,
// Z measurements with outcome-conditioned X corrections on the partner
// qubits, outcome averaged. Output qubits: hub qubit then the n partners.
DensityMatrix bells_to_ghz(const std::vector<DensityMatrix>& pairs);
DensityMatrix bells_to_ghz_ideal(int n);

// Branch-resolved variant on ideal inputs: one corrected pure state per
// measurement outcome string, with its probability.
std::vector<std::pair<double, StateVector>> bells_to_ghz_branches(int n);

// Tree of GHZ states to fuse. Edge (parent, child) fuses the child into the
// merged state at one co-located qubit pair: the parent-side qubit is the
// CNOT source and survives, the child-side qubit is measured out.
struct FusionTreeSpec {
    std::vector<int> sizes;  // qubit count per state, each >= 2
    int root = 0;
    struct Edge {
        int parent = -1;
        int child = -1;
        int parent_qubit = 0;
        int child_qubit = 0;
    };
    std::vector<Edge> edges;

    int total_qubits() const;
    int output_qubits() const;
    void validate() const;
};

DensityMatrix fuse_ghz_tree(const FusionTreeSpec& spec, const std::vector<DensityMatrix>& states);
DensityMatrix fuse_ghz_tree_ideal(const FusionTreeSpec& spec);

// Graph-state distribution from a hub: the hub holds one qubit of every
// pair, applies CZ along the target graph's edges to its qubits, X-measures
// them, and the outer qubits apply Z corrections z = A(G) x. With
// include_center an extra ideal pair held entirely by the hub joins the
// state, as the last vertex of `target`.
DensityMatrix hub_graph_state(const Graph& target, const std::vector<DensityMatrix>& pairs,
                              bool include_center);

// X-basis measurement of a qubit subset, outcome averaged, with the parity-Z
// correction on the first surviving qubit.
DensityMatrix x_measure_out(const DensityMatrix& state, const std::vector<int>& qubits);

double ghz_fidelity(const DensityMatrix& state);

// Qubits to Hadamard so that the star graph state with the given center maps
// onto the GHZ state: every qubit except the center.
std::vector<int> star_to_ghz_hadamards(int center, int n);

// Fan-out CNOT (control = qubit 0) over the first n qubits followed by a
// Pauli channel over the same qubits.
DensityMatrix noisy_fanout_cnot(const DensityMatrix& state, int n, const PauliChannel& channel);
void apply_fanout_cnot(DensityMatrix& state, int n);
DensityMatrix apply_pauli_channel(const DensityMatrix& state, const PauliChannel& channel);

// Test-support generators.
DensityMatrix random_density_matrix(int num_qubits, Rng& rng);
DensityMatrix random_bell_diagonal(Rng& rng);
FusionTreeSpec random_fusion_tree(int states, int max_total_qubits, Rng& rng);

}  // namespace ghznet
