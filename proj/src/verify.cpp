#include "ghznet/verify.hpp"

#include <cmath>
#include <cstdint>

#include <json.hpp>

#include "ghznet/quantum.hpp"

namespace ghznet {

namespace {

Graph random_graph_on(int n, double edge_prob, Rng& rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.next_double() < edge_prob) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

}  // namespace

bool VerifyReport::all_passed() const {
    for (const VerifyCheck& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const VerifyCheck& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.passed},
                               {"worst_error", c.worst_error},
                               {"cases", c.cases}});
    }
    j["all_pass"] = all_passed();
    return j.dump(2);
}

VerifyReport run_verification_suite(int trials, std::uint64_t seed) {
    VerifyReport report;
    Rng rng(seed);

    // Ideal star fusion reaches the GHZ state exactly.
    {
        VerifyCheck check{"star_fusion_ideal", true, 0.0, 0};
        for (int n = 2; n <= 5; ++n) {
            double f = ghz_fidelity(bells_to_ghz_ideal(n));
            check.worst_error = std::max(check.worst_error, std::abs(1.0 - f));
            ++check.cases;
        }
        check.passed = check.worst_error <= 1e-10;
        report.checks.push_back(check);
    }

    // Star-fusion fidelity formula vs oracle, Bell-diagonal and arbitrary
    // random pairs.
    {
        VerifyCheck check{"star_fusion_formula_vs_oracle", true, 0.0, 0};
        for (int n = 2; n <= 4; ++n) {
            for (int t = 0; t < trials; ++t) {
                std::vector<DensityMatrix> pairs;
                std::vector<BellOverlaps> mus;
                for (int i = 0; i < n; ++i) {
                    DensityMatrix pair =
                        (t % 2 == 0) ? random_bell_diagonal(rng) : random_density_matrix(2, rng);
                    mus.push_back(bell_overlaps_of(pair));
                    pairs.push_back(std::move(pair));
                }
                double oracle = ghz_fidelity(bells_to_ghz(pairs));
                double formula = star_fusion_fidelity(mus);
                check.worst_error = std::max(check.worst_error, std::abs(oracle - formula));
                ++check.cases;
            }
        }
        check.passed = check.worst_error <= 1e-9;
        report.checks.push_back(check);
    }

    // Tree-fusion fidelity formula vs oracle on random small trees.
    {
        VerifyCheck check{"tree_fusion_formula_vs_oracle", true, 0.0, 0};
        for (int m = 2; m <= 3; ++m) {
            for (int t = 0; t < trials; ++t) {
                FusionTreeSpec spec = random_fusion_tree(m, 8, rng);
                std::vector<DensityMatrix> states;
                std::vector<GhzOverlaps> lams;
                for (int s : spec.sizes) {
                    DensityMatrix state = random_density_matrix(s, rng);
                    lams.push_back(ghz_overlaps_of(state));
                    states.push_back(std::move(state));
                }
                double oracle = ghz_fidelity(fuse_ghz_tree(spec, states));
                double formula = tree_fusion_fidelity(lams);
                check.worst_error = std::max(check.worst_error, std::abs(oracle - formula));
                ++check.cases;
            }
        }
        check.passed = check.worst_error <= 1e-9;
        report.checks.push_back(check);
    }

    // Hub graph-state fidelity formula vs oracle.
    {
        VerifyCheck check{"hub_graph_state_formula_vs_oracle", true, 0.0, 0};
        for (int n = 2; n <= 4; ++n) {
            for (int t = 0; t < trials; ++t) {
                Graph target = random_graph_on(n, 0.6, rng);
                std::vector<DensityMatrix> pairs;
                std::vector<BellOverlaps> mus;
                std::vector<std::uint64_t> adjacency(static_cast<std::size_t>(n), 0);
                for (int i = 0; i < n; ++i) {
                    for (int j : target.neighbors(i)) {
                        adjacency[static_cast<std::size_t>(i)] |= 1ull << j;
                    }
                    DensityMatrix pair =
                        (t % 2 == 0) ? random_bell_diagonal(rng) : random_density_matrix(2, rng);
                    mus.push_back(bell_overlaps_of(pair));
                    pairs.push_back(std::move(pair));
                }
                DensityMatrix out = hub_graph_state(target, pairs, false);
                double oracle = out.fidelity(graph_state_vector(target));
                double formula = hub_graph_state_fidelity(adjacency, mus);
                check.worst_error = std::max(check.worst_error, std::abs(oracle - formula));
                ++check.cases;
            }
        }
        check.passed = check.worst_error <= 1e-9;
        report.checks.push_back(check);
    }

    // Composed closed form vs chained star + tree formulas.
    {
        VerifyCheck check{"composed_fidelity_identity", true, 0.0, 0};
        for (int t = 0; t < trials; ++t) {
            double mu0 = 0.5 + 0.5 * rng.next_double();
            double mu1 = (1.0 - mu0) * rng.next_double();
            for (int n = 1; n <= 4; ++n) {
                for (int m = 2; m <= 4; ++m) {
                    std::vector<GhzOverlaps> lams(static_cast<std::size_t>(m),
                                                  star_fusion_overlaps(n, mu0, mu1));
                    double chained = tree_fusion_fidelity(lams);
                    double closed = composed_fidelity(n, m, mu0, mu1);
                    check.worst_error = std::max(check.worst_error, std::abs(chained - closed));
                    ++check.cases;
                }
            }
        }
        check.passed = check.worst_error <= 1e-12;
        report.checks.push_back(check);
    }

    return report;
}

}  // namespace ghznet
