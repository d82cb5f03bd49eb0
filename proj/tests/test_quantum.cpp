#include <doctest.h>

#include <stdexcept>

#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "ghznet/noise.hpp"
#include "ghznet/quantum.hpp"

using namespace ghznet;

namespace {

using Mat = std::vector<cplx>;  // row-major square

Mat mat_mul(const Mat& a, const Mat& b, std::size_t d) {
    Mat out(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            cplx v = a[i * d + k];
            if (v == cplx(0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < d; ++j) {
                out[i * d + j] += v * b[k * d + j];
            }
        }
    }
    return out;
}

// Dense matrix of i^phase X^x Z^z over n qubits (qubit i at word bit i, and
// at index bit n-1-i to match the simulator's ordering).
Mat pauli_matrix(const PauliWord& w) {
    std::size_t d = static_cast<std::size_t>(1) << w.n;
    std::size_t xmask = 0, zmask = 0;
    for (int i = 0; i < w.n; ++i) {
        std::size_t bit = static_cast<std::size_t>(1) << (w.n - 1 - i);
        if ((w.x >> i) & 1ull) {
            xmask |= bit;
        }
        if ((w.z >> i) & 1ull) {
            zmask |= bit;
        }
    }
    cplx phase = 1.0;
    for (int k = 0; k < ((w.phase % 4) + 4) % 4; ++k) {
        phase *= cplx(0.0, 1.0);
    }
    Mat m(d * d, 0.0);
    for (std::size_t col = 0; col < d; ++col) {
        double sign = (std::popcount(col & zmask) & 1) ? -1.0 : 1.0;
        m[(col ^ xmask) * d + col] = phase * sign;
    }
    return m;
}

Mat fanout_cnot_matrix(int n) {
    std::size_t d = static_cast<std::size_t>(1) << n;
    std::size_t control = d >> 1;  // qubit 0 = top bit
    std::size_t rest = d - 1 - control;
    Mat m(d * d, 0.0);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t row = (col & control) ? (col ^ rest) : col;
        m[row * d + col] = 1.0;
    }
    return m;
}

// Identify which canonical word (up to i^k) a matrix equals; requires an
// exact entry-level match.
bool matrices_equal(const Mat& a, const Mat& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            return false;
        }
    }
    return true;
}

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
    REQUIRE(a.num_qubits() == b.num_qubits());
    double worst = 0.0;
    std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return worst;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) {
        g.add_edge(v, v + 1);
    }
    return g;
}

}  // namespace

TEST_CASE("noisy Bell pair construction") {
    SUBCASE("no noise gives the Bell projector") {
        DensityMatrix rho = make_bell(ChannelSpec::depolarizing(0.0));
        CHECK(rho.fidelity(bell_vector()) == doctest::Approx(1.0));
        CHECK(rho.trace_real() == doctest::Approx(1.0));
    }
    SUBCASE("amplitude damping matches the explicit two-term form") {
        double g = 0.42;
        DensityMatrix rho = make_bell(ChannelSpec::amplitude_damping(g));
        CHECK(rho.trace_real() == doctest::Approx(1.0));
        CHECK(rho.is_hermitian());
        // |1,0><1,0| weight
        CHECK(rho.at(0b10, 0b10).real() == doctest::Approx(g / 2.0));
        // coherence between |00> and |11>: (1-g/2) * sqrt(1-g)/(2-g) = sqrt(1-g)/2
        CHECK(rho.at(0b00, 0b11).real() == doctest::Approx(std::sqrt(1.0 - g) / 2.0));
    }
    SUBCASE("diagonal overlaps agree with the channel table") {
        for (const ChannelSpec& spec :
             {ChannelSpec::depolarizing(0.23), ChannelSpec::dephasing(0.4),
              ChannelSpec::amplitude_damping(0.31)}) {
            BellOverlaps expected = mu_from_channel(spec);
            BellOverlaps measured = bell_overlaps_of(make_bell(spec));
            for (int z = 0; z < 2; ++z) {
                for (int x = 0; x < 2; ++x) {
                    CHECK(measured.mu[z][x] == doctest::Approx(expected.mu[z][x]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("star fusion oracle") {
    SUBCASE("ideal pairs reach the GHZ state exactly") {
        for (int n = 2; n <= 6; ++n) {
            DensityMatrix out = bells_to_ghz_ideal(n);
            CHECK(out.num_qubits() == n + 1);
            CHECK(std::abs(1.0 - ghz_fidelity(out)) <= 1e-10);
            CHECK(out.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("identical dephasing pairs match the closed form") {
        double q = 0.15;
        for (int n = 2; n <= 4; ++n) {
            std::vector<DensityMatrix> pairs(static_cast<std::size_t>(n),
                                             make_bell(ChannelSpec::dephasing(q)));
            double f = ghz_fidelity(bells_to_ghz(pairs));
            double mu0 = 1 - q, mu1 = q;
            double closed = 0.5 * (std::pow(mu0 - mu1, n) + std::pow(mu0 + mu1, n));
            CHECK(f == doctest::Approx(closed).epsilon(1e-12));
        }
    }
    SUBCASE("arbitrary random pairs match the overlap formula") {
        Rng rng(101);
        for (int n = 2; n <= 3; ++n) {
            for (int t = 0; t < 40; ++t) {
                std::vector<DensityMatrix> pairs;
                std::vector<BellOverlaps> mus;
                for (int i = 0; i < n; ++i) {
                    DensityMatrix pair = random_density_matrix(2, rng);
                    mus.push_back(bell_overlaps_of(pair));
                    pairs.push_back(std::move(pair));
                }
                DensityMatrix out = bells_to_ghz(pairs);
                CHECK(out.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
                CHECK(out.is_hermitian());
                CHECK(std::abs(ghz_fidelity(out) - star_fusion_fidelity(mus)) <= 1e-9);
            }
        }
    }
    SUBCASE("branches are outcome independent on ideal inputs") {
        for (int n = 2; n <= 4; ++n) {
            auto branches = bells_to_ghz_branches(n);
            REQUIRE(branches.size() == (1u << (n - 1)));
            StateVector ghz = ghz_vector(n + 1);
            double total_p = 0.0;
            for (const auto& [p, psi] : branches) {
                total_p += p;
                CHECK(std::abs(std::abs(psi.inner(ghz)) - 1.0) <= 1e-10);
            }
            CHECK(total_p == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("tree fusion oracle") {
    SUBCASE("two ideal three-qubit states fuse into a five-qubit GHZ") {
        FusionTreeSpec spec;
        spec.sizes = {3, 3};
        spec.root = 0;
        spec.edges = {{0, 1, 2, 0}};
        DensityMatrix out = fuse_ghz_tree_ideal(spec);
        CHECK(out.num_qubits() == 5);
        CHECK(std::abs(1.0 - ghz_fidelity(out)) <= 1e-10);
    }
    SUBCASE("star arrangement of three ideal states") {
        FusionTreeSpec spec;
        spec.sizes = {3, 2, 2};
        spec.root = 0;
        spec.edges = {{0, 1, 0, 0}, {0, 2, 1, 1}};
        DensityMatrix out = fuse_ghz_tree_ideal(spec);
        CHECK(out.num_qubits() == 5);
        CHECK(std::abs(1.0 - ghz_fidelity(out)) <= 1e-10);
    }
    SUBCASE("linear chain with noisy inputs matches the overlap formula") {
        Rng rng(7);
        for (int t = 0; t < 30; ++t) {
            FusionTreeSpec spec;
            spec.sizes = {2, 3, 2};
            spec.root = 0;
            spec.edges = {{0, 1, 1, 0}, {1, 2, 2, 0}};
            std::vector<DensityMatrix> states;
            std::vector<GhzOverlaps> lams;
            for (int s : spec.sizes) {
                DensityMatrix st = random_density_matrix(s, rng);
                lams.push_back(ghz_overlaps_of(st));
                states.push_back(std::move(st));
            }
            DensityMatrix out = fuse_ghz_tree(spec, states);
            CHECK(std::abs(ghz_fidelity(out) - tree_fusion_fidelity(lams)) <= 1e-9);
            CHECK(out.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("malformed trees rejected") {
        FusionTreeSpec spec;
        spec.sizes = {3, 3};
        spec.root = 0;
        spec.edges = {};
        CHECK_THROWS_AS(fuse_ghz_tree_ideal(spec), std::invalid_argument);
        spec.edges = {{0, 1, 2, 0}, {1, 0, 0, 0}};
        CHECK_THROWS_AS(fuse_ghz_tree_ideal(spec), std::invalid_argument);
    }
}

TEST_CASE("hub graph-state oracle") {
    SUBCASE("ideal pairs produce the path graph state exactly") {
        Graph target = path_graph(3);
        std::vector<DensityMatrix> pairs(3, DensityMatrix::from_pure(bell_vector()));
        DensityMatrix out = hub_graph_state(target, pairs, false);
        CHECK(out.num_qubits() == 3);
        CHECK(std::abs(1.0 - out.fidelity(graph_state_vector(target))) <= 1e-10);
    }
    SUBCASE("edgeless target gives a plus-state product") {
        Graph target(2);
        std::vector<DensityMatrix> pairs(2, DensityMatrix::from_pure(bell_vector()));
        DensityMatrix out = hub_graph_state(target, pairs, false);
        CHECK(std::abs(1.0 - out.fidelity(plus_vector(2))) <= 1e-10);
    }
    SUBCASE("include_center joins the hub as the last vertex") {
        Graph target = path_graph(3);  // two outer nodes + hub at index 2
        std::vector<DensityMatrix> pairs(2, DensityMatrix::from_pure(bell_vector()));
        DensityMatrix out = hub_graph_state(target, pairs, true);
        CHECK(out.num_qubits() == 3);
        CHECK(std::abs(1.0 - out.fidelity(graph_state_vector(target))) <= 1e-10);
    }
    SUBCASE("noisy pairs match the overlap formula") {
        Rng rng(55);
        for (int n = 2; n <= 4; ++n) {
            for (int t = 0; t < 25; ++t) {
                Graph target(n);
                for (int u = 0; u < n; ++u) {
                    for (int v = u + 1; v < n; ++v) {
                        if (rng.next_double() < 0.5) {
                            target.add_edge(u, v);
                        }
                    }
                }
                std::vector<DensityMatrix> pairs;
                std::vector<BellOverlaps> mus;
                std::vector<std::uint64_t> adjacency(static_cast<std::size_t>(n), 0);
                for (int i = 0; i < n; ++i) {
                    for (int j : target.neighbors(i)) {
                        adjacency[static_cast<std::size_t>(i)] |= 1ull << j;
                    }
                    DensityMatrix pair = t % 2 ? random_density_matrix(2, rng)
                                               : random_bell_diagonal(rng);
                    mus.push_back(bell_overlaps_of(pair));
                    pairs.push_back(std::move(pair));
                }
                DensityMatrix out = hub_graph_state(target, pairs, false);
                double formula = hub_graph_state_fidelity(adjacency, mus);
                CHECK(std::abs(out.fidelity(graph_state_vector(target)) - formula) <= 1e-9);
            }
        }
    }
}

TEST_CASE("X measurement removal") {
    SUBCASE("GHZ shrinks to GHZ") {
        DensityMatrix ghz4 = DensityMatrix::from_pure(ghz_vector(4));
        DensityMatrix out = x_measure_out(ghz4, {1});
        CHECK(out.num_qubits() == 3);
        CHECK(std::abs(1.0 - ghz_fidelity(out)) <= 1e-10);
    }
    SUBCASE("measuring all but two leaves a Bell pair") {
        DensityMatrix ghz5 = DensityMatrix::from_pure(ghz_vector(5));
        DensityMatrix out = x_measure_out(ghz5, {0, 2, 4});
        CHECK(out.num_qubits() == 2);
        CHECK(std::abs(1.0 - out.fidelity(bell_vector())) <= 1e-10);
    }
    SUBCASE("trace preserved on noisy input") {
        Rng rng(77);
        DensityMatrix rho = random_density_matrix(4, rng);
        DensityMatrix out = x_measure_out(rho, {0, 3});
        CHECK(out.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(out.is_hermitian());
    }
    SUBCASE("invalid subsets rejected") {
        DensityMatrix ghz3 = DensityMatrix::from_pure(ghz_vector(3));
        CHECK_THROWS_AS(x_measure_out(ghz3, {0, 0}), std::invalid_argument);
        CHECK_THROWS_AS(x_measure_out(ghz3, {3}), std::invalid_argument);
        CHECK_THROWS_AS(x_measure_out(ghz3, {0, 1, 2}), std::invalid_argument);
    }
}

TEST_CASE("star graph state and GHZ frame map") {
    SUBCASE("hadamard frame maps the star state onto GHZ") {
        for (int n = 2; n <= 5; ++n) {
            for (int center = 0; center < n; ++center) {
                Graph star(n);
                for (int v = 0; v < n; ++v) {
                    if (v != center) {
                        star.add_edge(center, v);
                    }
                }
                StateVector psi = graph_state_vector(star);
                for (int q : star_to_ghz_hadamards(center, n)) {
                    psi.apply_h(q);
                }
                CHECK(std::abs(std::abs(psi.inner(ghz_vector(n))) - 1.0) <= 1e-10);
            }
        }
    }
    SUBCASE("center shifts differ by exactly two gates") {
        for (int n = 3; n <= 6; ++n) {
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    std::vector<int> ha = star_to_ghz_hadamards(a, n);
                    std::vector<int> hb = star_to_ghz_hadamards(b, n);
                    std::vector<int> diff;
                    std::set_symmetric_difference(ha.begin(), ha.end(), hb.begin(), hb.end(),
                                                  std::back_inserter(diff));
                    CHECK(diff.size() == 2);
                }
            }
        }
    }
    SUBCASE("ghz fidelity of the GHZ projector is one") {
        CHECK(ghz_fidelity(DensityMatrix::from_pure(ghz_vector(3))) == doctest::Approx(1.0));
    }
}

TEST_CASE("pauli conjugation against dense matrices") {
    SUBCASE("all two-qubit words with all phases, exactly") {
        Mat cnot = fanout_cnot_matrix(2);
        for (std::uint64_t x = 0; x < 4; ++x) {
            for (std::uint64_t z = 0; z < 4; ++z) {
                for (int phase = 0; phase < 4; ++phase) {
                    PauliWord w = canonical_pauli(2, x, z);
                    w.phase = phase;
                    PauliWord predicted = fanout_cnot_conjugate(w);
                    Mat direct = mat_mul(mat_mul(cnot, pauli_matrix(w), 4), cnot, 4);
                    CHECK(matrices_equal(direct, pauli_matrix(predicted)));
                }
            }
        }
    }
    SUBCASE("random three-qubit words, exactly") {
        Rng rng(9);
        Mat cnot = fanout_cnot_matrix(3);
        for (int t = 0; t < 1000; ++t) {
            PauliWord w = canonical_pauli(3, rng.next_u64(), rng.next_u64());
            w.phase = static_cast<int>(rng.next_below(4));
            PauliWord predicted = fanout_cnot_conjugate(w);
            Mat direct = mat_mul(mat_mul(cnot, pauli_matrix(w), 8), cnot, 8);
            CHECK(matrices_equal(direct, pauli_matrix(predicted)));
        }
    }
}

TEST_CASE("noisy fan-out CNOT absorption equivalence") {
    Rng rng(127);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + static_cast<int>(rng.next_below(2));  // 2 or 3 qubits
        PauliChannel channel;
        channel.n = n;
        double total = 0.0;
        for (std::uint64_t x = 0; x < (1ull << n); ++x) {
            for (std::uint64_t z = 0; z < (1ull << n); ++z) {
                double w = rng.next_double();
                channel.terms.push_back({canonical_pauli(n, x, z), w});
                total += w;
            }
        }
        for (auto& [word, p] : channel.terms) {
            p /= total;
        }
        DensityMatrix rho = random_density_matrix(n, rng);

        DensityMatrix after_gate = noisy_fanout_cnot(rho, n, channel);
        DensityMatrix absorbed = apply_pauli_channel(rho, absorb_channel_through_fanout(channel));
        apply_fanout_cnot(absorbed, n);
        CHECK(max_abs_diff(after_gate, absorbed) <= 1e-12);
    }
    SUBCASE("identity channel reduces to the plain gate") {
        Rng rng2(5);
        DensityMatrix rho = random_density_matrix(2, rng2);
        PauliChannel id;
        id.n = 2;
        id.terms = {{canonical_pauli(2, 0, 0), 1.0}};
        DensityMatrix a = noisy_fanout_cnot(rho, 2, id);
        DensityMatrix b = rho;
        apply_fanout_cnot(b, 2);
        CHECK(max_abs_diff(a, b) <= 1e-14);
    }
}

TEST_CASE("star fusion at the noise threshold reaches the target fidelity") {
    // Running the protocol with pairs exactly at the tolerated noise level
    // must land on the requested fidelity.
    for (ChannelKind kind :
         {ChannelKind::depolarizing, ChannelKind::dephasing, ChannelKind::amplitude_damping}) {
        for (int n : {2, 3, 5}) {
            double target = 0.9;
            double param = noise_threshold(kind, n, target);
            ChannelSpec spec{kind, param, {}};
            std::vector<DensityMatrix> pairs(static_cast<std::size_t>(n), make_bell(spec));
            double f = ghz_fidelity(bells_to_ghz(pairs));
            CHECK(f >= target - 1e-6);
            CHECK(f <= target + 1e-6);
        }
    }
}

TEST_CASE("density matrix bookkeeping") {
    SUBCASE("channel operations preserve trace and hermiticity") {
        Rng rng(31);
        DensityMatrix rho = random_density_matrix(3, rng);
        REQUIRE(rho.trace_real() == doctest::Approx(1.0));
        rho.apply_h(1);
        rho.apply_cnot(0, 2);
        rho.apply_cz(1, 2);
        auto [b0, b1] = rho.measure_remove_z(1);
        b0.add_scaled(b1, 1.0);
        CHECK(b0.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(b0.is_hermitian());
    }
    SUBCASE("qubit caps enforced") {
        CHECK_THROWS_AS(DensityMatrix(13), std::invalid_argument);
        CHECK_THROWS_AS(StateVector(23), std::invalid_argument);
    }
}
