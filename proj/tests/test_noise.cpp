#include <doctest.h>

#include <stdexcept>

#include <bit>
#include <cmath>

#include "ghznet/noise.hpp"
#include "ghznet/rng.hpp"

using namespace ghznet;

namespace {

// Brute-force evaluation of the star-fusion fidelity: sum over all index
// strings z in {0,1}^(n-1) with the first pair taking the parity index.
double brute_force_star(const std::vector<BellOverlaps>& mus) {
    std::size_t n = mus.size();
    double total = 0.0;
    for (std::uint64_t zs = 0; zs < (1ull << (n - 1)); ++zs) {
        int parity = std::popcount(zs) & 1;
        double term = mus[0].mu[parity][0];
        for (std::size_t i = 1; i < n; ++i) {
            term *= mus[i].mu[(zs >> (i - 1)) & 1ull][0];
        }
        total += term;
    }
    return total;
}

double brute_force_tree(const std::vector<GhzOverlaps>& lams) {
    std::size_t m = lams.size();
    double total = 0.0;
    for (std::uint64_t zs = 0; zs < (1ull << (m - 1)); ++zs) {
        int parity = std::popcount(zs) & 1;
        double term = parity ? lams[m - 1].lambda1 : lams[m - 1].lambda0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            term *= ((zs >> i) & 1ull) ? lams[i].lambda1 : lams[i].lambda0;
        }
        total += term;
    }
    return total;
}

BellOverlaps random_overlaps(Rng& rng) {
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
    return o;
}

}  // namespace

TEST_CASE("channel overlap tables") {
    SUBCASE("identity depolarizing") {
        BellOverlaps o = mu_from_channel(ChannelSpec::depolarizing(0.0));
        CHECK(o.mu[0][0] == 1.0);
        CHECK(o.mu[1][0] == 0.0);
        CHECK(o.mu[0][1] == 0.0);
    }
    SUBCASE("depolarizing splits the rest evenly") {
        BellOverlaps o = mu_from_channel(ChannelSpec::depolarizing(0.3));
        CHECK(o.mu[0][0] == doctest::Approx(0.7));
        CHECK(o.mu[1][0] == doctest::Approx(0.1));
        CHECK(o.mu[0][1] == doctest::Approx(0.1));
        CHECK(o.mu[1][1] == doctest::Approx(0.1));
    }
    SUBCASE("dephasing") {
        BellOverlaps o = mu_from_channel(ChannelSpec::dephasing(0.1));
        CHECK(o.mu[0][0] == doctest::Approx(0.9));
        CHECK(o.mu[1][0] == doctest::Approx(0.1));
        CHECK(o.mu[0][1] == 0.0);
        CHECK(o.mu[1][1] == 0.0);
    }
    SUBCASE("amplitude damping diagonal") {
        double g = 0.37;
        BellOverlaps o = mu_from_channel(ChannelSpec::amplitude_damping(g));
        double s = std::sqrt(1.0 - g);
        CHECK(o.mu[0][0] == doctest::Approx(0.25 * (1 + s) * (1 + s)));
        CHECK(o.mu[1][0] == doctest::Approx(0.25 * (1 - s) * (1 - s)));
        CHECK(o.sum() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(mu_from_channel(ChannelSpec::depolarizing(1.2)), std::invalid_argument);
    CHECK_THROWS_AS(mu_from_channel(ChannelSpec::dephasing(-0.1)), std::invalid_argument);
}

TEST_CASE("star fusion fidelity") {
    SUBCASE("ideal pairs give one") {
        BellOverlaps ideal;
        ideal.mu[0][0] = 1.0;
        CHECK(star_fusion_fidelity({ideal, ideal, ideal}) == doctest::Approx(1.0));
    }
    SUBCASE("two depolarized pairs") {
        BellOverlaps o = mu_from_channel(ChannelSpec::depolarizing(0.1));
        CHECK(star_fusion_fidelity({o, o}) == doctest::Approx(0.8111111111111111).epsilon(1e-12));
    }
    SUBCASE("identical pairs match the closed form") {
        Rng rng(5);
        for (int t = 0; t < 50; ++t) {
            BellOverlaps o = random_overlaps(rng);
            for (int n = 2; n <= 9; ++n) {
                std::vector<BellOverlaps> mus(static_cast<std::size_t>(n), o);
                double closed = 0.5 * (std::pow(o.mu[0][0] - o.mu[1][0], n) +
                                       std::pow(o.mu[0][0] + o.mu[1][0], n));
                CHECK(star_fusion_fidelity(mus) == doctest::Approx(closed).epsilon(1e-14));
            }
        }
    }
    SUBCASE("parity evaluation equals brute force up to n=12") {
        Rng rng(17);
        for (int t = 0; t < 300; ++t) {
            int n = 2 + static_cast<int>(rng.next_below(11));
            std::vector<BellOverlaps> mus;
            for (int i = 0; i < n; ++i) {
                mus.push_back(random_overlaps(rng));
            }
            CHECK(std::abs(star_fusion_fidelity(mus) - brute_force_star(mus)) <= 1e-12);
        }
    }
    SUBCASE("valid inputs stay in [0,1]") {
        Rng rng(23);
        for (int t = 0; t < 200; ++t) {
            int n = 2 + static_cast<int>(rng.next_below(9));
            std::vector<BellOverlaps> mus;
            for (int i = 0; i < n; ++i) {
                mus.push_back(random_overlaps(rng));
            }
            double f = star_fusion_fidelity(mus);
            CHECK(f >= -1e-12);
            CHECK(f <= 1.0 + 1e-12);
        }
    }
    CHECK_THROWS_AS(star_fusion_fidelity({BellOverlaps{}}), std::invalid_argument);
}

TEST_CASE("tree fusion fidelity") {
    SUBCASE("ideal states give one") {
        GhzOverlaps ideal{1.0, 0.0};
        CHECK(tree_fusion_fidelity({ideal, ideal}) == doctest::Approx(1.0));
    }
    SUBCASE("identical states match the closed form") {
        Rng rng(7);
        for (int t = 0; t < 50; ++t) {
            double l0 = rng.next_double();
            double l1 = (1.0 - l0) * rng.next_double();
            for (int m = 2; m <= 8; ++m) {
                std::vector<GhzOverlaps> lams(static_cast<std::size_t>(m), GhzOverlaps{l0, l1});
                double closed = 0.5 * (std::pow(l0 + l1, m) + std::pow(l0 - l1, m));
                CHECK(tree_fusion_fidelity(lams) == doctest::Approx(closed).epsilon(1e-14));
            }
        }
    }
    SUBCASE("matches brute force") {
        Rng rng(13);
        for (int t = 0; t < 300; ++t) {
            int m = 2 + static_cast<int>(rng.next_below(11));
            std::vector<GhzOverlaps> lams;
            for (int i = 0; i < m; ++i) {
                double l0 = rng.next_double();
                lams.push_back({l0, (1.0 - l0) * rng.next_double()});
            }
            CHECK(std::abs(tree_fusion_fidelity(lams) - brute_force_tree(lams)) <= 1e-12);
        }
    }
}

TEST_CASE("composed fidelity") {
    SUBCASE("ideal") {
        CHECK(composed_fidelity(3, 4, 1.0, 0.0) == doctest::Approx(1.0));
    }
    SUBCASE("matches the star-then-tree composition") {
        Rng rng(31);
        for (int t = 0; t < 50; ++t) {
            double mu0 = 0.6 + 0.4 * rng.next_double();
            double mu1 = (1.0 - mu0) * rng.next_double();
            for (int n = 1; n <= 5; ++n) {
                for (int m = 2; m <= 5; ++m) {
                    std::vector<GhzOverlaps> lams(static_cast<std::size_t>(m),
                                                  star_fusion_overlaps(n, mu0, mu1));
                    CHECK(composed_fidelity(n, m, mu0, mu1) ==
                          doctest::Approx(tree_fusion_fidelity(lams)).epsilon(1e-13));
                }
            }
        }
    }
    SUBCASE("depends only on the product") {
        CHECK(composed_fidelity(3, 4, 0.9, 0.05) ==
              doctest::Approx(composed_fidelity(4, 3, 0.9, 0.05)).epsilon(1e-15));
        CHECK(composed_fidelity(2, 6, 0.9, 0.05) ==
              doctest::Approx(composed_fidelity(12, 1, 0.9, 0.05)).epsilon(1e-15));
    }
}

TEST_CASE("noise thresholds") {
    SUBCASE("dephasing closed form") {
        CHECK(noise_threshold(ChannelKind::dephasing, 1, 1.0) == doctest::Approx(0.0));
        CHECK(noise_threshold(ChannelKind::dephasing, 2, 0.95) ==
              doctest::Approx(0.5 * (1.0 - std::sqrt(0.9))).epsilon(1e-12));
    }
    SUBCASE("boundary conditions hold with near equality") {
        for (int n : {1, 2, 5, 10, 25}) {
            for (double f : {0.6, 0.85, 0.95, 0.999}) {
                double p = noise_threshold(ChannelKind::depolarizing, n, f);
                double lhs = std::pow(1.0 - 4.0 * p / 3.0, n) + std::pow(1.0 - 2.0 * p / 3.0, n);
                CHECK(std::abs(lhs - 2.0 * f) <= 1e-10);
                double g = noise_threshold(ChannelKind::amplitude_damping, n, f);
                double lhs_ad = std::pow(1.0 - g, n / 2.0) + std::pow(1.0 - g / 2.0, n);
                CHECK(std::abs(lhs_ad - 2.0 * f) <= 1e-10);
            }
        }
    }
    SUBCASE("monotone non-increasing in n and fidelity") {
        for (ChannelKind kind :
             {ChannelKind::depolarizing, ChannelKind::dephasing, ChannelKind::amplitude_damping}) {
            double prev = 1.0;
            for (int n = 1; n <= 30; ++n) {
                double p = noise_threshold(kind, n, 0.9);
                CHECK(p <= prev + 1e-12);
                prev = p;
            }
            double prev_f = 1.0;
            for (double f : {0.55, 0.7, 0.85, 0.95, 0.99}) {
                double p = noise_threshold(kind, 4, f);
                CHECK(p <= prev_f + 1e-12);
                prev_f = p;
            }
        }
    }
    CHECK_THROWS_AS(noise_threshold(ChannelKind::dephasing, 2, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(noise_threshold(ChannelKind::dephasing, 0, 0.9), std::invalid_argument);
}

TEST_CASE("pauli word conjugation") {
    SUBCASE("identity maps to identity") {
        PauliWord id = canonical_pauli(3, 0, 0);
        CHECK(fanout_cnot_conjugate(id) == id);
    }
    SUBCASE("control X fans out") {
        PauliWord w = canonical_pauli(4, 1, 0);
        PauliWord out = fanout_cnot_conjugate(w);
        CHECK(out.x == 0b1111);
        CHECK(out.z == 0);
        CHECK(out.phase == 0);
    }
    SUBCASE("involution") {
        Rng rng(3);
        for (int t = 0; t < 500; ++t) {
            int n = 2 + static_cast<int>(rng.next_below(6));
            PauliWord w = canonical_pauli(n, rng.next_u64(), rng.next_u64());
            CHECK(fanout_cnot_conjugate(fanout_cnot_conjugate(w)) == w);
        }
    }
    SUBCASE("commutation relations preserved (symplectic form invariant)") {
        Rng rng(11);
        auto symplectic = [](const PauliWord& a, const PauliWord& b) {
            return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1;
        };
        for (int t = 0; t < 500; ++t) {
            int n = 2 + static_cast<int>(rng.next_below(6));
            PauliWord a = canonical_pauli(n, rng.next_u64(), rng.next_u64());
            PauliWord b = canonical_pauli(n, rng.next_u64(), rng.next_u64());
            CHECK(symplectic(a, b) ==
                  symplectic(fanout_cnot_conjugate(a), fanout_cnot_conjugate(b)));
        }
    }
    CHECK_THROWS_AS(fanout_cnot_conjugate(canonical_pauli(1, 1, 0)), std::invalid_argument);
}

TEST_CASE("pauli channel absorption") {
    SUBCASE("delta on identity stays put") {
        PauliChannel ch;
        ch.n = 3;
        ch.terms = {{canonical_pauli(3, 0, 0), 1.0}};
        PauliChannel out = absorb_channel_through_fanout(ch);
        CHECK(out.terms.size() == 1);
        CHECK(out.terms[0].first == canonical_pauli(3, 0, 0));
    }
    SUBCASE("tensor dephasing mixes z indices as in the worked two-qubit case") {
        double q = 0.2;
        // per-qubit channel: p_{x,z} with p_{0,0}=1-q, p_{0,1}=q
        PauliChannel ch;
        ch.n = 2;
        for (int z1 = 0; z1 < 2; ++z1) {
            for (int z2 = 0; z2 < 2; ++z2) {
                double p = (z1 ? q : 1 - q) * (z2 ? q : 1 - q);
                ch.terms.push_back(
                    {canonical_pauli(2, 0, static_cast<std::uint64_t>(z1 | (z2 << 1))), p});
            }
        }
        PauliChannel out = absorb_channel_through_fanout(ch);
        // transformed weights follow p'_{(x,z)} = p_{x1, z1^z2} p_{x1^x2, z2}
        auto weight_of = [&out](std::uint64_t x, std::uint64_t z) {
            double total = 0.0;
            for (const auto& [w, p] : out.terms) {
                if (w.x == x && w.z == z) {
                    total += p;
                }
            }
            return total;
        };
        auto p_single = [q](int x, int z) { return x == 0 ? (z ? q : 1 - q) : 0.0; };
        for (std::uint64_t z = 0; z < 4; ++z) {
            int z1 = static_cast<int>(z & 1);
            int z2 = static_cast<int>((z >> 1) & 1);
            double expected = p_single(0, z1 ^ z2) * p_single(0, z2);
            CHECK(weight_of(0, z) == doctest::Approx(expected).epsilon(1e-12));
        }
        // the transformed joint need not factorize into its marginals
        double m1_z1 = weight_of(0, 1) + weight_of(0, 3);
        double m2_z1 = weight_of(0, 2) + weight_of(0, 3);
        double joint = weight_of(0, 3);
        CHECK(std::abs(joint - m1_z1 * m2_z1) > 1e-6);
    }
    SUBCASE("distribution stays normalized") {
        Rng rng(29);
        PauliChannel ch;
        ch.n = 2;
        double total = 0.0;
        std::vector<double> w(16);
        for (double& v : w) {
            v = rng.next_double();
            total += v;
        }
        int idx = 0;
        for (std::uint64_t x = 0; x < 4; ++x) {
            for (std::uint64_t z = 0; z < 4; ++z) {
                ch.terms.push_back({canonical_pauli(2, x, z), w[static_cast<std::size_t>(idx++)] / total});
            }
        }
        PauliChannel out = absorb_channel_through_fanout(ch);
        double sum = 0.0;
        for (const auto& [word, p] : out.terms) {
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("invalid distribution rejected") {
        PauliChannel ch;
        ch.n = 2;
        ch.terms = {{canonical_pauli(2, 0, 0), 0.5}};
        CHECK_THROWS_AS(absorb_channel_through_fanout(ch), std::invalid_argument);
    }
}

TEST_CASE("hub graph-state fidelity formula") {
    SUBCASE("ideal pairs give one") {
        BellOverlaps ideal;
        ideal.mu[0][0] = 1.0;
        std::vector<std::uint64_t> adjacency = {0b010, 0b101, 0b010};  // path on 3
        CHECK(hub_graph_state_fidelity(adjacency, {ideal, ideal, ideal}) == doctest::Approx(1.0));
    }
    SUBCASE("edgeless two-node case enumerates four terms") {
        BellOverlaps a = mu_from_channel(ChannelSpec::dephasing(0.1));
        BellOverlaps b = mu_from_channel(ChannelSpec::dephasing(0.25));
        // With no edges z=0 always: F = sum_x mu_a(0,x1) mu_b(0,x2).
        double expected = (a.mu[0][0] + a.mu[0][1]) * (b.mu[0][0] + b.mu[0][1]);
        CHECK(hub_graph_state_fidelity({0, 0}, {a, b}) == doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("size mismatch rejected") {
        CHECK_THROWS_AS(hub_graph_state_fidelity({0, 0}, {BellOverlaps{}}), std::invalid_argument);
    }
}
