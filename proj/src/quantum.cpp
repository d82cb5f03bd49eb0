#include "ghznet/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace ghznet {

namespace {

constexpr int kMaxStateQubits = 22;
constexpr int kMaxDensityQubits = 12;
constexpr double kInvSqrt2 = 0.70710678118654752440;

constexpr cplx kHadamard[2][2] = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
constexpr cplx kPauliX[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
constexpr cplx kPauliZ[2][2] = {{1.0, 0.0}, {0.0, -1.0}};

// Qubit 0 occupies the most significant bit of the index.
inline std::size_t qubit_bit(int nq, int qubit) {
    return static_cast<std::size_t>(1) << (nq - 1 - qubit);
}

void check_qubit(int nq, int qubit, const char* what) {
    if (qubit < 0 || qubit >= nq) {
        throw std::invalid_argument(std::string(what) + ": qubit index out of range");
    }
}

// In-place single-qubit gate on a strided complex array.
void apply_1q_strided(cplx* base, std::size_t count, std::size_t stride, std::size_t bit,
                      const cplx (&u)[2][2], bool conjugate) {
    cplx u00 = u[0][0], u01 = u[0][1], u10 = u[1][0], u11 = u[1][1];
    if (conjugate) {
        u00 = std::conj(u00);
        u01 = std::conj(u01);
        u10 = std::conj(u10);
        u11 = std::conj(u11);
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (i & bit) {
            continue;
        }
        cplx& a = base[i * stride];
        cplx& b = base[(i | bit) * stride];
        cplx a0 = a;
        cplx b0 = b;
        a = u00 * a0 + u01 * b0;
        b = u10 * a0 + u11 * b0;
    }
}

void apply_cnot_strided(cplx* base, std::size_t count, std::size_t stride, std::size_t cbit,
                        std::size_t tbit) {
    for (std::size_t i = 0; i < count; ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(base[i * stride], base[(i | tbit) * stride]);
        }
    }
}

void apply_cz_strided(cplx* base, std::size_t count, std::size_t stride, std::size_t abit,
                      std::size_t bbit) {
    for (std::size_t i = 0; i < count; ++i) {
        if ((i & abit) && (i & bbit)) {
            base[i * stride] = -base[i * stride];
        }
    }
}

// Index with a zero bit inserted at `bit`'s position, optionally set.
inline std::size_t insert_bit(std::size_t packed, std::size_t bit, int value) {
    std::size_t high = packed & ~(bit - 1);
    std::size_t low = packed & (bit - 1);
    return (high << 1) | (static_cast<std::size_t>(value) * bit) | low;
}

}  // namespace

StateVector::StateVector(int num_qubits) : nq_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxStateQubits) {
        throw std::invalid_argument("StateVector: qubit count out of range");
    }
    amps_.assign(static_cast<std::size_t>(1) << nq_, 0.0);
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<cplx> amps) {
    if (num_qubits < 0 || num_qubits > kMaxStateQubits ||
        amps.size() != (static_cast<std::size_t>(1) << num_qubits)) {
        throw std::invalid_argument("StateVector: amplitude size mismatch");
    }
    StateVector s;
    s.nq_ = num_qubits;
    s.amps_ = std::move(amps);
    return s;
}

void StateVector::apply_1q(const cplx (&u)[2][2], int qubit) {
    check_qubit(nq_, qubit, "StateVector::apply_1q");
    apply_1q_strided(amps_.data(), amps_.size(), 1, qubit_bit(nq_, qubit), u, false);
}

void StateVector::apply_h(int qubit) { apply_1q(kHadamard, qubit); }
void StateVector::apply_x(int qubit) { apply_1q(kPauliX, qubit); }
void StateVector::apply_z(int qubit) { apply_1q(kPauliZ, qubit); }

void StateVector::apply_cnot(int control, int target) {
    check_qubit(nq_, control, "StateVector::apply_cnot");
    check_qubit(nq_, target, "StateVector::apply_cnot");
    apply_cnot_strided(amps_.data(), amps_.size(), 1, qubit_bit(nq_, control),
                       qubit_bit(nq_, target));
}

void StateVector::apply_cz(int a, int b) {
    check_qubit(nq_, a, "StateVector::apply_cz");
    check_qubit(nq_, b, "StateVector::apply_cz");
    apply_cz_strided(amps_.data(), amps_.size(), 1, qubit_bit(nq_, a), qubit_bit(nq_, b));
}

double StateVector::norm2() const {
    double total = 0.0;
    for (const cplx& a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::scale(cplx factor) {
    for (cplx& a : amps_) {
        a *= factor;
    }
}

double StateVector::project_remove(int qubit, int bit) {
    check_qubit(nq_, qubit, "StateVector::project_remove");
    std::size_t b = qubit_bit(nq_, qubit);
    std::vector<cplx> next(amps_.size() >> 1);
    double weight = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        cplx a = amps_[insert_bit(i, b, bit)];
        next[i] = a;
        weight += std::norm(a);
    }
    amps_ = std::move(next);
    --nq_;
    return weight;
}

cplx StateVector::inner(const StateVector& other) const {
    if (other.nq_ != nq_) {
        throw std::invalid_argument("StateVector::inner: dimension mismatch");
    }
    cplx total = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        total += std::conj(amps_[i]) * other.amps_[i];
    }
    return total;
}

StateVector bell_vector() {
    StateVector s(2);
    s.apply_h(0);
    s.apply_cnot(0, 1);
    return s;
}

StateVector ghz_vector(int n) {
    if (n < 1) {
        throw std::invalid_argument("ghz_vector: need n >= 1");
    }
    StateVector s(n);
    s.apply_h(0);
    for (int q = 1; q < n; ++q) {
        s.apply_cnot(0, q);
    }
    return s;
}

StateVector plus_vector(int n) {
    StateVector s(n);
    for (int q = 0; q < n; ++q) {
        s.apply_h(q);
    }
    return s;
}

StateVector graph_state_vector(const Graph& g) {
    StateVector s = plus_vector(g.node_count());
    for (const auto& [u, v] : g.edges()) {
        s.apply_cz(u, v);
    }
    return s;
}

DensityMatrix::DensityMatrix(int num_qubits) : nq_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxDensityQubits) {
        throw std::invalid_argument("DensityMatrix: qubit count out of range");
    }
    m_.assign(dim() * dim(), 0.0);
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    if (psi.num_qubits() > kMaxDensityQubits) {
        throw std::invalid_argument("DensityMatrix::from_pure: state too large");
    }
    DensityMatrix rho(psi.num_qubits());
    const auto& a = psi.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            rho.m_[i * a.size() + j] = a[i] * std::conj(a[j]);
        }
    }
    return rho;
}

DensityMatrix DensityMatrix::kron(const DensityMatrix& a, const DensityMatrix& b) {
    DensityMatrix out(a.nq_ + b.nq_);
    std::size_t da = a.dim();
    std::size_t db = b.dim();
    for (std::size_t ia = 0; ia < da; ++ia) {
        for (std::size_t ja = 0; ja < da; ++ja) {
            cplx va = a.m_[ia * da + ja];
            if (va == cplx(0.0)) {
                continue;
            }
            for (std::size_t ib = 0; ib < db; ++ib) {
                for (std::size_t jb = 0; jb < db; ++jb) {
                    out.m_[(ia * db + ib) * (da * db) + (ja * db + jb)] = va * b.m_[ib * db + jb];
                }
            }
        }
    }
    return out;
}

void DensityMatrix::add_scaled(const DensityMatrix& other, double weight) {
    if (other.nq_ != nq_) {
        throw std::invalid_argument("DensityMatrix::add_scaled: dimension mismatch");
    }
    for (std::size_t i = 0; i < m_.size(); ++i) {
        m_[i] += weight * other.m_[i];
    }
}

void DensityMatrix::apply_1q(const cplx (&u)[2][2], int qubit) {
    check_qubit(nq_, qubit, "DensityMatrix::apply_1q");
    std::size_t d = dim();
    std::size_t bit = qubit_bit(nq_, qubit);
    for (std::size_t col = 0; col < d; ++col) {
        apply_1q_strided(m_.data() + col, d, d, bit, u, false);  // U rho
    }
    for (std::size_t row = 0; row < d; ++row) {
        apply_1q_strided(m_.data() + row * d, d, 1, bit, u, true);  // rho U^dagger
    }
}

void DensityMatrix::apply_h(int qubit) { apply_1q(kHadamard, qubit); }
void DensityMatrix::apply_x(int qubit) { apply_1q(kPauliX, qubit); }
void DensityMatrix::apply_z(int qubit) { apply_1q(kPauliZ, qubit); }

void DensityMatrix::apply_cnot(int control, int target) {
    check_qubit(nq_, control, "DensityMatrix::apply_cnot");
    check_qubit(nq_, target, "DensityMatrix::apply_cnot");
    std::size_t d = dim();
    std::size_t cbit = qubit_bit(nq_, control);
    std::size_t tbit = qubit_bit(nq_, target);
    for (std::size_t col = 0; col < d; ++col) {
        apply_cnot_strided(m_.data() + col, d, d, cbit, tbit);
    }
    for (std::size_t row = 0; row < d; ++row) {
        apply_cnot_strided(m_.data() + row * d, d, 1, cbit, tbit);
    }
}

void DensityMatrix::apply_cz(int a, int b) {
    check_qubit(nq_, a, "DensityMatrix::apply_cz");
    check_qubit(nq_, b, "DensityMatrix::apply_cz");
    std::size_t d = dim();
    std::size_t abit = qubit_bit(nq_, a);
    std::size_t bbit = qubit_bit(nq_, b);
    for (std::size_t col = 0; col < d; ++col) {
        apply_cz_strided(m_.data() + col, d, d, abit, bbit);
    }
    for (std::size_t row = 0; row < d; ++row) {
        apply_cz_strided(m_.data() + row * d, d, 1, abit, bbit);
    }
}

void DensityMatrix::apply_pauli(const PauliWord& word, int offset) {
    if (offset < 0 || offset + word.n > nq_) {
        throw std::invalid_argument("DensityMatrix::apply_pauli: word does not fit");
    }
    std::size_t d = dim();
    // X^x Z^z |a> = (-1)^(z.a) |a^x>; the i^phase factors cancel between P
    // and P^dagger.
    std::size_t xmask = 0;
    std::size_t zmask = 0;
    for (int i = 0; i < word.n; ++i) {
        std::size_t bit = qubit_bit(nq_, offset + i);
        if ((word.x >> i) & 1ull) {
            xmask |= bit;
        }
        if ((word.z >> i) & 1ull) {
            zmask |= bit;
        }
    }
    std::vector<cplx> next(m_.size());
    for (std::size_t a = 0; a < d; ++a) {
        int sa = std::popcount(a & zmask) & 1;
        for (std::size_t b = 0; b < d; ++b) {
            int sb = std::popcount(b & zmask) & 1;
            cplx v = m_[a * d + b];
            next[(a ^ xmask) * d + (b ^ xmask)] = (sa ^ sb) ? -v : v;
        }
    }
    m_ = std::move(next);
}

std::pair<DensityMatrix, DensityMatrix> DensityMatrix::measure_remove_z(int qubit) const {
    check_qubit(nq_, qubit, "DensityMatrix::measure_remove_z");
    std::size_t bit = qubit_bit(nq_, qubit);
    DensityMatrix out0(nq_ - 1);
    DensityMatrix out1(nq_ - 1);
    std::size_t d = dim();
    std::size_t dr = out0.dim();
    for (std::size_t i = 0; i < dr; ++i) {
        for (std::size_t j = 0; j < dr; ++j) {
            out0.m_[i * dr + j] = m_[insert_bit(i, bit, 0) * d + insert_bit(j, bit, 0)];
            out1.m_[i * dr + j] = m_[insert_bit(i, bit, 1) * d + insert_bit(j, bit, 1)];
        }
    }
    return {std::move(out0), std::move(out1)};
}

double DensityMatrix::trace_real() const {
    double t = 0.0;
    std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) {
        t += m_[i * d + i].real();
    }
    return t;
}

double DensityMatrix::fidelity(const StateVector& psi) const {
    if (psi.num_qubits() != nq_) {
        throw std::invalid_argument("DensityMatrix::fidelity: dimension mismatch");
    }
    const auto& a = psi.amplitudes();
    std::size_t d = dim();
    cplx total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == cplx(0.0)) {
            continue;
        }
        cplx row = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            row += m_[i * d + j] * a[j];
        }
        total += std::conj(a[i]) * row;
    }
    return total.real();
}

bool DensityMatrix::is_hermitian(double tol) const {
    std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            if (std::abs(m_[i * d + j] - std::conj(m_[j * d + i])) > tol) {
                return false;
            }
        }
    }
    return true;
}

DensityMatrix make_bell(const ChannelSpec& spec) {
    if (spec.kind == ChannelKind::amplitude_damping) {
        double g = spec.parameter;
        if (!(g >= 0.0 && g <= 1.0)) {
            throw std::invalid_argument("make_bell: parameter must be in [0,1]");
        }
        // (g/2)|10><10| + (1 - g/2)|v><v| with
        // |v> = (|00> + sqrt(1-g)|11>)/sqrt(2-g).
        double s = std::sqrt(1.0 - g);
        std::vector<cplx> v(4, 0.0);
        double nv = std::sqrt(2.0 - g);
        v[0b00] = 1.0 / nv;
        v[0b11] = s / nv;
        DensityMatrix rho = DensityMatrix::from_pure(StateVector::from_amplitudes(2, v));
        DensityMatrix damped(2);
        damped.at(0b10, 0b10) = 1.0;
        DensityMatrix out(2);
        out.add_scaled(rho, 1.0 - g / 2.0);
        out.add_scaled(damped, g / 2.0);
        return out;
    }

    BellOverlaps mu = mu_from_channel(spec);
    DensityMatrix out(2);
    for (int z = 0; z < 2; ++z) {
        for (int x = 0; x < 2; ++x) {
            if (mu.mu[z][x] == 0.0) {
                continue;
            }
            StateVector phi = bell_vector();
            if (x) {
                phi.apply_x(0);
            }
            if (z) {
                phi.apply_z(0);
            }
            out.add_scaled(DensityMatrix::from_pure(phi), mu.mu[z][x]);
        }
    }
    return out;
}

BellOverlaps bell_overlaps_of(const DensityMatrix& pair) {
    if (pair.num_qubits() != 2) {
        throw std::invalid_argument("bell_overlaps_of: need a 2-qubit state");
    }
    BellOverlaps o;
    for (int z = 0; z < 2; ++z) {
        for (int x = 0; x < 2; ++x) {
            StateVector phi = bell_vector();
            if (x) {
                phi.apply_x(0);
            }
            if (z) {
                phi.apply_z(0);
            }
            o.mu[z][x] = pair.fidelity(phi);
        }
    }
    return o;
}

GhzOverlaps ghz_overlaps_of(const DensityMatrix& state) {
    std::size_t d = state.dim();
    cplx c00 = state.at(0, 0);
    cplx c01 = state.at(0, d - 1);
    cplx c10 = state.at(d - 1, 0);
    cplx c11 = state.at(d - 1, d - 1);
    GhzOverlaps o;
    o.lambda0 = 0.5 * (c00 + c01 + c10 + c11).real();
    o.lambda1 = 0.5 * (c00 - c01 - c10 + c11).real();
    return o;
}

DensityMatrix bells_to_ghz(const std::vector<DensityMatrix>& pairs) {
    std::size_t n = pairs.size();
    if (n < 2 || n > 10) {
        throw std::invalid_argument("bells_to_ghz: need between 2 and 10 pairs");
    }
    for (const DensityMatrix& p : pairs) {
        if (p.num_qubits() != 2) {
            throw std::invalid_argument("bells_to_ghz: every pair must have 2 qubits");
        }
    }
    // Pairs are folded in one at a time: fuse, measure the hub-side qubit,
    // correct the partner. Equivalent to performing all CNOTs first, since
    // the per-pair channels act on disjoint qubits.
    DensityMatrix state = pairs[0];  // qubits: hub, partner1
    for (std::size_t i = 1; i < n; ++i) {
        state = DensityMatrix::kron(state, pairs[i]);
        int hub_side = state.num_qubits() - 2;
        int partner = state.num_qubits() - 1;
        state.apply_cnot(0, hub_side);
        auto [b0, b1] = state.measure_remove_z(hub_side);
        b1.apply_x(partner - 1);  // partner shifts down once hub_side is gone
        b0.add_scaled(b1, 1.0);
        state = std::move(b0);
    }
    return state;
}

DensityMatrix bells_to_ghz_ideal(int n) {
    std::vector<DensityMatrix> pairs(static_cast<std::size_t>(n),
                                     DensityMatrix::from_pure(bell_vector()));
    return bells_to_ghz(pairs);
}

std::vector<std::pair<double, StateVector>> bells_to_ghz_branches(int n) {
    if (n < 2 || n > 10) {
        throw std::invalid_argument("bells_to_ghz_branches: need 2 <= n <= 10");
    }
    // Qubit layout: A1..An then B1..Bn.
    StateVector init(2 * n);
    {
        std::vector<cplx> amps(init.dim(), 0.0);
        double norm = std::pow(2.0, -0.5 * n);
        for (std::size_t bits = 0; bits < (static_cast<std::size_t>(1) << n); ++bits) {
            std::size_t idx = (bits << n) | bits;
            amps[idx] = norm;
        }
        init = StateVector::from_amplitudes(2 * n, std::move(amps));
    }
    for (int i = 1; i < n; ++i) {
        init.apply_cnot(0, i);
    }
    std::vector<std::pair<double, StateVector>> branches;
    for (std::size_t outcome = 0; outcome < (static_cast<std::size_t>(1) << (n - 1)); ++outcome) {
        StateVector branch = init;
        // Measure A2..An (positions 1..n-1); removing position 1 repeatedly
        // walks through them in order.
        for (int i = 0; i < n - 1; ++i) {
            branch.project_remove(1, static_cast<int>((outcome >> i) & 1));
        }
        for (int i = 0; i < n - 1; ++i) {
            if ((outcome >> i) & 1) {
                branch.apply_x(2 + i);  // B_{i+2}
            }
        }
        double p = branch.norm2();
        branch.scale(1.0 / std::sqrt(p));
        branches.emplace_back(p, std::move(branch));
    }
    return branches;
}

int FusionTreeSpec::total_qubits() const {
    int total = 0;
    for (int s : sizes) {
        total += s;
    }
    return total;
}

int FusionTreeSpec::output_qubits() const {
    return total_qubits() - static_cast<int>(edges.size());
}

void FusionTreeSpec::validate() const {
    int m = static_cast<int>(sizes.size());
    if (m < 1) {
        throw std::invalid_argument("FusionTreeSpec: no states");
    }
    for (int s : sizes) {
        if (s < 2) {
            throw std::invalid_argument("FusionTreeSpec: every state needs >= 2 qubits");
        }
    }
    if (root < 0 || root >= m) {
        throw std::invalid_argument("FusionTreeSpec: root out of range");
    }
    if (static_cast<int>(edges.size()) != m - 1) {
        throw std::invalid_argument("FusionTreeSpec: edge count must be m-1");
    }
    std::vector<int> up_edge(static_cast<std::size_t>(m), -1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Edge& edge = edges[e];
        if (edge.parent < 0 || edge.parent >= m || edge.child < 0 || edge.child >= m ||
            edge.child == root) {
            throw std::invalid_argument("FusionTreeSpec: bad edge endpoints");
        }
        if (edge.parent_qubit < 0 || edge.parent_qubit >= sizes[static_cast<std::size_t>(edge.parent)] ||
            edge.child_qubit < 0 || edge.child_qubit >= sizes[static_cast<std::size_t>(edge.child)]) {
            throw std::invalid_argument("FusionTreeSpec: fusion qubit out of range");
        }
        if (up_edge[static_cast<std::size_t>(edge.child)] >= 0) {
            throw std::invalid_argument("FusionTreeSpec: node fused upward twice");
        }
        up_edge[static_cast<std::size_t>(edge.child)] = static_cast<int>(e);
    }
    // The measured (upward) qubit of a state must not also source one of its
    // own child fusions, so that every qubit joins at most one CNOT.
    for (const Edge& edge : edges) {
        int up = up_edge[static_cast<std::size_t>(edge.parent)];
        if (up >= 0 && edges[static_cast<std::size_t>(up)].child_qubit == edge.parent_qubit) {
            throw std::invalid_argument("FusionTreeSpec: measured qubit reused as fusion source");
        }
    }
    // Reachability from the root through parent->child edges.
    std::vector<std::vector<int>> children(static_cast<std::size_t>(m));
    for (const Edge& edge : edges) {
        children[static_cast<std::size_t>(edge.parent)].push_back(edge.child);
    }
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    std::queue<int> q;
    q.push(root);
    seen[static_cast<std::size_t>(root)] = true;
    int reached = 0;
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        ++reached;
        for (int c : children[static_cast<std::size_t>(s)]) {
            if (seen[static_cast<std::size_t>(c)]) {
                throw std::invalid_argument("FusionTreeSpec: edges do not form a tree");
            }
            seen[static_cast<std::size_t>(c)] = true;
            q.push(c);
        }
    }
    if (reached != m) {
        throw std::invalid_argument("FusionTreeSpec: edges do not form a tree");
    }
}

DensityMatrix fuse_ghz_tree(const FusionTreeSpec& spec, const std::vector<DensityMatrix>& states) {
    spec.validate();
    if (states.size() != spec.sizes.size()) {
        throw std::invalid_argument("fuse_ghz_tree: state count mismatch");
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].num_qubits() != spec.sizes[i]) {
            throw std::invalid_argument("fuse_ghz_tree: state size mismatch");
        }
    }
    if (spec.total_qubits() > kMaxDensityQubits) {
        throw std::invalid_argument("fuse_ghz_tree: tree too large for the dense oracle");
    }

    // Attach states top-down in BFS order; each attachment is one CNOT, one
    // averaged Z measurement, and an X correction over the incoming state's
    // surviving qubits.
    std::vector<std::vector<std::size_t>> by_parent(spec.sizes.size());
    for (std::size_t e = 0; e < spec.edges.size(); ++e) {
        by_parent[static_cast<std::size_t>(spec.edges[e].parent)].push_back(e);
    }
    std::vector<std::size_t> order;
    std::queue<int> q;
    q.push(spec.root);
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (std::size_t e : by_parent[static_cast<std::size_t>(s)]) {
            order.push_back(e);
            q.push(spec.edges[e].child);
        }
    }

    DensityMatrix merged = states[static_cast<std::size_t>(spec.root)];
    std::vector<std::pair<int, int>> labels;  // (state, local qubit) per position
    for (int qubit = 0; qubit < spec.sizes[static_cast<std::size_t>(spec.root)]; ++qubit) {
        labels.emplace_back(spec.root, qubit);
    }
    auto position_of = [&labels](int state, int qubit) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == std::make_pair(state, qubit)) {
                return static_cast<int>(i);
            }
        }
        throw std::logic_error("fuse_ghz_tree: fusion qubit already consumed");
    };

    for (std::size_t e : order) {
        const FusionTreeSpec::Edge& edge = spec.edges[e];
        int src = position_of(edge.parent, edge.parent_qubit);
        int offset = merged.num_qubits();
        merged = DensityMatrix::kron(merged, states[static_cast<std::size_t>(edge.child)]);
        for (int qubit = 0; qubit < spec.sizes[static_cast<std::size_t>(edge.child)]; ++qubit) {
            labels.emplace_back(edge.child, qubit);
        }
        int tgt = offset + edge.child_qubit;
        merged.apply_cnot(src, tgt);
        auto [b0, b1] = merged.measure_remove_z(tgt);
        labels.erase(labels.begin() + tgt);
        for (std::size_t pos = static_cast<std::size_t>(offset); pos < labels.size(); ++pos) {
            b1.apply_x(static_cast<int>(pos));
        }
        b0.add_scaled(b1, 1.0);
        merged = std::move(b0);
    }
    return merged;
}

DensityMatrix fuse_ghz_tree_ideal(const FusionTreeSpec& spec) {
    std::vector<DensityMatrix> states;
    states.reserve(spec.sizes.size());
    for (int s : spec.sizes) {
        states.push_back(DensityMatrix::from_pure(ghz_vector(s)));
    }
    return fuse_ghz_tree(spec, states);
}

DensityMatrix hub_graph_state(const Graph& target, const std::vector<DensityMatrix>& pairs,
                              bool include_center) {
    std::vector<DensityMatrix> all_pairs = pairs;
    if (include_center) {
        all_pairs.push_back(DensityMatrix::from_pure(bell_vector()));
    }
    std::size_t m = all_pairs.size();
    if (m == 0) {
        throw std::invalid_argument("hub_graph_state: no pairs");
    }
    if (target.node_count() != static_cast<int>(m)) {
        throw std::invalid_argument("hub_graph_state: target graph size mismatch");
    }
    if (2 * m > static_cast<std::size_t>(kMaxDensityQubits)) {
        throw std::invalid_argument("hub_graph_state: too many pairs for the dense oracle");
    }
    for (const DensityMatrix& p : all_pairs) {
        if (p.num_qubits() != 2) {
            throw std::invalid_argument("hub_graph_state: pairs must have 2 qubits");
        }
    }

    // Layout: hub qubit then outer qubit per pair: (c0, o0, c1, o1, ...).
    DensityMatrix state = all_pairs[0];
    for (std::size_t i = 1; i < m; ++i) {
        state = DensityMatrix::kron(state, all_pairs[i]);
    }
    auto hub_pos = [](std::size_t i) { return static_cast<int>(2 * i); };
    for (const auto& [u, v] : target.edges()) {
        state.apply_cz(hub_pos(static_cast<std::size_t>(u)), hub_pos(static_cast<std::size_t>(v)));
    }
    // Measure hub qubits in X; on outcome 1 the pair's own outer qubit
    // applies Z. After i removals the hub of pair i sits at position i and
    // its outer qubit lands at position i once the hub is gone.
    for (std::size_t i = 0; i < m; ++i) {
        int pos = static_cast<int>(i);
        state.apply_h(pos);
        auto [b0, b1] = state.measure_remove_z(pos);
        b1.apply_z(pos);
        b0.add_scaled(b1, 1.0);
        state = std::move(b0);
    }
    return state;
}

DensityMatrix x_measure_out(const DensityMatrix& state, const std::vector<int>& qubits) {
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() &&
        (sorted.front() < 0 || sorted.back() >= state.num_qubits() ||
         std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())) {
        throw std::invalid_argument("x_measure_out: invalid qubit subset");
    }
    if (static_cast<int>(sorted.size()) >= state.num_qubits()) {
        throw std::invalid_argument("x_measure_out: at least one qubit must survive");
    }
    // Parity corrections accumulate on the lowest surviving qubit.
    std::vector<bool> measured(static_cast<std::size_t>(state.num_qubits()), false);
    for (int q : sorted) {
        measured[static_cast<std::size_t>(q)] = true;
    }
    int survivor = 0;
    while (measured[static_cast<std::size_t>(survivor)]) {
        ++survivor;
    }
    DensityMatrix out = state;
    // Process from the highest position so pending positions stay valid.
    int removed_below_survivor = 0;
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        out.apply_h(*it);
        auto [b0, b1] = out.measure_remove_z(*it);
        if (*it < survivor) {
            ++removed_below_survivor;
        }
        b1.apply_z(survivor - removed_below_survivor);
        b0.add_scaled(b1, 1.0);
        out = std::move(b0);
    }
    return out;
}

double ghz_fidelity(const DensityMatrix& state) {
    std::size_t d = state.dim();
    return 0.5 *
           (state.at(0, 0) + state.at(0, d - 1) + state.at(d - 1, 0) + state.at(d - 1, d - 1))
               .real();
}

std::vector<int> star_to_ghz_hadamards(int center, int n) {
    if (n < 1 || center < 0 || center >= n) {
        throw std::invalid_argument("star_to_ghz_hadamards: center out of range");
    }
    std::vector<int> out;
    for (int q = 0; q < n; ++q) {
        if (q != center) {
            out.push_back(q);
        }
    }
    return out;
}

void apply_fanout_cnot(DensityMatrix& state, int n) {
    if (n < 2 || n > state.num_qubits()) {
        throw std::invalid_argument("apply_fanout_cnot: bad qubit count");
    }
    for (int t = 1; t < n; ++t) {
        state.apply_cnot(0, t);
    }
}

DensityMatrix apply_pauli_channel(const DensityMatrix& state, const PauliChannel& channel) {
    channel.validate();
    if (channel.n > state.num_qubits()) {
        throw std::invalid_argument("apply_pauli_channel: channel larger than state");
    }
    DensityMatrix out(state.num_qubits());
    for (const auto& [word, p] : channel.terms) {
        if (p == 0.0) {
            continue;
        }
        DensityMatrix term = state;
        term.apply_pauli(word, 0);
        out.add_scaled(term, p);
    }
    return out;
}

DensityMatrix noisy_fanout_cnot(const DensityMatrix& state, int n, const PauliChannel& channel) {
    DensityMatrix out = state;
    apply_fanout_cnot(out, n);
    return apply_pauli_channel(out, channel);
}

DensityMatrix random_density_matrix(int num_qubits, Rng& rng) {
    std::size_t d = static_cast<std::size_t>(1) << num_qubits;
    // Ginibre construction: rho = G G^dagger / tr(G G^dagger).
    std::vector<cplx> g(d * d);
    for (cplx& v : g) {
        // Box-Muller from two uniform draws for each component.
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        double u3 = rng.next_double();
        double u4 = rng.next_double();
        double r1 = std::sqrt(-2.0 * std::log(1.0 - u1));
        double r2 = std::sqrt(-2.0 * std::log(1.0 - u3));
        v = cplx(r1 * std::cos(2.0 * M_PI * u2), r2 * std::cos(2.0 * M_PI * u4));
    }
    DensityMatrix rho(num_qubits);
    double trace = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx total = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                total += g[i * d + k] * std::conj(g[j * d + k]);
            }
            rho.at(i, j) = total;
            if (i == j) {
                trace += total.real();
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            rho.at(i, j) /= trace;
        }
    }
    return rho;
}

DensityMatrix random_bell_diagonal(Rng& rng) {
    double w[4];
    double total = 0.0;
    for (double& v : w) {
        v = -std::log(1.0 - rng.next_double());
        total += v;
    }
    BellOverlaps o;
    o.mu[0][0] = w[0] / total;
    o.mu[1][0] = w[1] / total;
    o.mu[0][1] = w[2] / total;
    o.mu[1][1] = w[3] / total;
    return make_bell(ChannelSpec::custom_overlaps(o));
}

FusionTreeSpec random_fusion_tree(int states, int max_total_qubits, Rng& rng) {
    if (states < 1 || max_total_qubits < 2 * states) {
        throw std::invalid_argument("random_fusion_tree: qubit budget too small");
    }
    FusionTreeSpec spec;
    spec.root = 0;
    spec.sizes.assign(static_cast<std::size_t>(states), 2);
    int budget = max_total_qubits - 2 * states;
    for (int i = 0; i < states && budget > 0; ++i) {
        int extra = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(budget + 1)));
        spec.sizes[static_cast<std::size_t>(i)] += extra;
        budget -= extra;
    }
    for (int child = 1; child < states; ++child) {
        FusionTreeSpec::Edge e;
        e.child = child;
        e.parent = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(child)));
        e.child_qubit = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(spec.sizes[static_cast<std::size_t>(child)])));
        while (true) {
            e.parent_qubit = static_cast<int>(rng.next_below(
                static_cast<std::uint64_t>(spec.sizes[static_cast<std::size_t>(e.parent)])));
            bool clash = false;
            for (const auto& prev : spec.edges) {
                if (prev.child == e.parent && prev.child_qubit == e.parent_qubit) {
                    clash = true;
                }
            }
            if (!clash) {
                break;
            }
        }
        spec.edges.push_back(e);
    }
    return spec;
}

}  // namespace ghznet
