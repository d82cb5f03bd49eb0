// Command-line front end: network generation, GHZ distribution planning,
// baseline algorithms, fidelity/threshold evaluation, Monte Carlo sweeps and
// the formula-vs-simulator verification suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghznet/baselines.hpp"
#include "ghznet/graph.hpp"
#include "ghznet/netgen.hpp"
#include "ghznet/noise.hpp"
#include "ghznet/planner.hpp"
#include "ghznet/sweep.hpp"
#include "ghznet/verify.hpp"

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    if (!text.empty() && text.back() != '\n') {
        out << "\n";
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        write_text(out_path, text);
    }
}

std::vector<int> parse_node_list(const std::string& text) {
    std::vector<int> nodes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            nodes.push_back(std::stoi(item));
        }
    }
    return nodes;
}

ghznet::ChannelKind parse_channel(const std::string& name) {
    if (name == "dep" || name == "depolarizing") {
        return ghznet::ChannelKind::depolarizing;
    }
    if (name == "deph" || name == "dephasing") {
        return ghznet::ChannelKind::dephasing;
    }
    if (name == "ad" || name == "amplitude-damping") {
        return ghznet::ChannelKind::amplitude_damping;
    }
    throw std::invalid_argument("unknown channel: " + name);
}

json plan_to_json(const ghznet::Plan& plan, const ghznet::CostReport& cost,
                  const std::vector<int>& orig_of) {
    auto orig = [&orig_of](int v) {
        return orig_of.empty() ? v : orig_of[static_cast<std::size_t>(v)];
    };
    json j;
    j["stars"] = json::array();
    for (const ghznet::Star& star : plan.stars) {
        json s;
        s["center"] = orig(star.center);
        s["leaves"] = json::array();
        for (int leaf : star.leaves) {
            s["leaves"].push_back(orig(leaf));
        }
        j["stars"].push_back(s);
    }
    j["fusion_edges"] = json::array();
    for (const ghznet::FusionEdge& e : plan.fusion_edges) {
        j["fusion_edges"].push_back({e.star_a, e.star_b, orig(e.shared_node)});
    }
    j["root_star"] = plan.root_star;
    j["subgraph_nodes"] = json::array();
    for (int v = 0; v < plan.subgraph.node_count(); ++v) {
        j["subgraph_nodes"].push_back(orig(v));
    }
    j["cost"] = {{"gates", cost.gates},
                 {"bell_pairs", cost.bell_pairs},
                 {"sources", cost.sources},
                 {"classical_bits", cost.classical_bits},
                 {"removal_measurements", cost.removal_measurements},
                 {"subgraph_size", cost.subgraph_size}};
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"GHZ distribution planning over Bell-pair networks"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a random network");
    std::string gen_model = "er";
    int gen_n = 50;
    double gen_p = 0.05;
    std::optional<int> gen_c;
    double gen_beta = 1.0, gen_l0 = 22.0, gen_d = 100.0;
    std::uint64_t gen_seed = 1;
    std::string gen_out, gen_sidecar;
    gen->add_option("--model", gen_model, "er|ba|waxman")->check(CLI::IsMember({"er", "ba", "waxman"}));
    gen->add_option("--n", gen_n, "node count");
    gen->add_option("--p", gen_p, "edge probability (er) / attachment fraction (ba)");
    gen->add_option("--c", gen_c, "attachment count (ba), overrides --p");
    gen->add_option("--beta", gen_beta, "waxman density parameter");
    gen->add_option("--l0", gen_l0, "waxman attenuation length (km)");
    gen->add_option("--diameter", gen_d, "waxman disc diameter (km)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "graph JSON output path");
    gen->add_option("--sidecar", gen_sidecar, "parameter/coordinate JSON output path");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "plan GHZ distribution on a graph");
    std::string plan_graph, plan_subset = "all", plan_out;
    std::uint64_t plan_seed = 1;
    plan_cmd->add_option("--graph", plan_graph, "graph JSON file")->required();
    plan_cmd->add_option("--subset", plan_subset, "comma-separated node list or 'all'");
    plan_cmd->add_option("--seed", plan_seed, "seed");
    plan_cmd->add_option("--out", plan_out, "plan JSON output path");

    // baseline
    auto* base = app.add_subcommand("baseline", "run a comparison algorithm");
    std::string base_algo, base_graph, base_terminals, base_out;
    std::uint64_t base_seed = 1;
    int base_chain_n = 0;
    base->add_option("--algo", base_algo, "steiner|star-expansion|transfer-chain|mds-greedy|mds-exact")
        ->required()
        ->check(CLI::IsMember({"steiner", "star-expansion", "transfer-chain", "mds-greedy", "mds-exact"}));
    base->add_option("--graph", base_graph, "graph JSON file");
    base->add_option("--terminals", base_terminals, "comma-separated terminals (steiner)");
    base->add_option("--n", base_chain_n, "chain length (transfer-chain)");
    base->add_option("--seed", base_seed, "seed");
    base->add_option("--out", base_out, "JSON output path");

    // fidelity
    auto* fid = app.add_subcommand("fidelity", "evaluate a closed-form fidelity");
    std::string fid_kind = "star", fid_overlaps, fid_graph, fid_out;
    fid->add_option("--kind", fid_kind, "star|tree|hub")->check(CLI::IsMember({"star", "tree", "hub"}));
    fid->add_option("--overlaps", fid_overlaps, "JSON file with overlap list")->required();
    fid->add_option("--graph", fid_graph, "target graph (hub)");
    fid->add_option("--out", fid_out, "JSON output path");

    // threshold
    auto* thr = app.add_subcommand("threshold", "maximum tolerable noise parameter");
    std::string thr_channel = "dep", thr_out;
    int thr_n = 2;
    int thr_n_to = 0;
    std::vector<double> thr_f_list;
    double thr_f = 0.95;
    thr->add_option("--channel", thr_channel, "dep|deph|ad")->required();
    thr->add_option("--n", thr_n, "number of Bell pairs")->required();
    thr->add_option("--n-to", thr_n_to, "grid mode: sweep n up to this value (CSV output)");
    thr->add_option("--fidelity", thr_f, "target fidelity in (1/2, 1]")->required();
    thr->add_option("--fidelities", thr_f_list, "grid mode: extra fidelity values");
    thr->add_option("--out", thr_out, "output path (JSON, or CSV in grid mode)");

    // verify
    auto* ver = app.add_subcommand("verify", "formula-vs-simulator verification suite");
    int ver_trials = 50;
    std::uint64_t ver_seed = 20240901;
    std::string ver_out;
    ver->add_option("--trials", ver_trials, "random instances per check");
    ver->add_option("--seed", ver_seed, "seed");
    ver->add_option("--out", ver_out, "JSON output path");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Monte Carlo sweep from a JSON config");
    std::string sw_config;
    sw->add_option("--config", sw_config, "sweep config JSON file")->required();

    // plot-data
    auto* pd = app.add_subcommand("plot-data", "aggregate a trial CSV into per-figure files");
    std::string pd_csv, pd_outdir = ".";
    pd->add_option("--csv", pd_csv, "trial CSV file")->required();
    pd->add_option("--outdir", pd_outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // bad flags are validation errors
    }

    if (gen->parsed()) {
        json sidecar;
        ghznet::Graph g;
        if (gen_model == "er") {
            g = ghznet::gen_er_connected({gen_n, gen_p, gen_seed});
            sidecar = {{"model", "er"}, {"n", gen_n}, {"p", gen_p}, {"seed", gen_seed}};
        } else if (gen_model == "ba") {
            int c = gen_c.value_or(static_cast<int>(std::ceil(gen_n * gen_p)));
            g = ghznet::gen_ba({gen_n, c, gen_seed});
            sidecar = {{"model", "ba"}, {"n", gen_n}, {"c", c}, {"seed", gen_seed}};
        } else {
            ghznet::WaxmanResult w = ghznet::gen_waxman({gen_n, gen_d, gen_beta, gen_l0, gen_seed});
            g = w.graph;
            sidecar = {{"model", "waxman"}, {"n", gen_n},       {"beta", gen_beta},
                       {"l0_km", gen_l0},   {"diameter_km", gen_d}, {"seed", gen_seed}};
            sidecar["coords"] = json::array();
            for (const auto& [x, y] : w.coords) {
                sidecar["coords"].push_back({x, y});
            }
        }
        emit(ghznet::graph_to_json(g), gen_out);
        if (!gen_sidecar.empty()) {
            write_text(gen_sidecar, sidecar.dump(2));
        }
        return 0;
    }

    if (plan_cmd->parsed()) {
        ghznet::Graph g = ghznet::load_graph_file(plan_graph);
        json j;
        if (plan_subset == "all") {
            ghznet::Plan plan = ghznet::plan_complete(g, plan_seed);
            j = plan_to_json(plan, ghznet::cost_report(plan), {});
        } else {
            std::vector<int> desired = parse_node_list(plan_subset);
            ghznet::SubsetPlan sp = ghznet::plan_subset(g, desired, plan_seed);
            j = plan_to_json(sp.plan, sp.cost, sp.subgraph_nodes);
            j["desired"] = desired;
        }
        emit(j.dump(2), plan_out);
        return 0;
    }

    if (base->parsed()) {
        json j;
        if (base_algo == "transfer-chain") {
            j["algo"] = base_algo;
            j["n"] = base_chain_n;
            j["gates"] = ghznet::transfer_gate_cost_chain(base_chain_n);
        } else {
            if (base_graph.empty()) {
                throw std::invalid_argument("--graph is required for this algorithm");
            }
            ghznet::Graph g = ghznet::load_graph_file(base_graph);
            j["algo"] = base_algo;
            if (base_algo == "steiner") {
                std::vector<int> terminals = base_terminals.empty()
                                                 ? std::vector<int>{}
                                                 : parse_node_list(base_terminals);
                if (terminals.empty()) {
                    for (int v = 0; v < g.node_count(); ++v) {
                        terminals.push_back(v);
                    }
                }
                ghznet::SteinerResult st = ghznet::steiner_approx(g, terminals);
                j["node_count"] = st.node_count;
                j["edge_count"] = st.edge_count;
                j["edges"] = json::array();
                for (const auto& [u, v] : st.tree.edges()) {
                    j["edges"].push_back({u, v});
                }
            } else if (base_algo == "star-expansion") {
                ghznet::GateModelReport rep = ghznet::star_expansion_gate_cost(g, base_seed);
                j["gates"] = rep.total_gates;
                j["expansions"] = json::array();
                for (const auto& [node, degree, charge] : rep.expansion_log) {
                    j["expansions"].push_back({{"node", node}, {"degree", degree}, {"gates", charge}});
                }
            } else if (base_algo == "mds-greedy") {
                std::vector<int> ds = ghznet::greedy_dominating_set(g);
                j["size"] = ds.size();
                j["nodes"] = ds;
            } else {  // mds-exact
                j["size"] = ghznet::exact_dominating_number(g);
            }
        }
        emit(j.dump(2), base_out);
        return 0;
    }

    if (fid->parsed()) {
        json in = json::parse(read_text(fid_overlaps));
        json j;
        if (fid_kind == "star") {
            std::vector<ghznet::BellOverlaps> mus;
            for (const auto& item : in.at("pairs")) {
                ghznet::BellOverlaps o;
                o.mu[0][0] = item.at("mu00").get<double>();
                o.mu[1][0] = item.at("mu10").get<double>();
                o.mu[0][1] = item.value("mu01", 0.0);
                o.mu[1][1] = item.value("mu11", 0.0);
                mus.push_back(o);
            }
            j["fidelity"] = ghznet::star_fusion_fidelity(mus);
        } else if (fid_kind == "tree") {
            std::vector<ghznet::GhzOverlaps> lams;
            for (const auto& item : in.at("states")) {
                lams.push_back({item.at("lambda0").get<double>(), item.at("lambda1").get<double>()});
            }
            j["fidelity"] = ghznet::tree_fusion_fidelity(lams);
        } else {
            if (fid_graph.empty()) {
                throw std::invalid_argument("--graph is required for hub fidelity");
            }
            ghznet::Graph g = ghznet::load_graph_file(fid_graph);
            std::vector<ghznet::BellOverlaps> mus;
            for (const auto& item : in.at("pairs")) {
                ghznet::BellOverlaps o;
                o.mu[0][0] = item.at("mu00").get<double>();
                o.mu[1][0] = item.at("mu10").get<double>();
                o.mu[0][1] = item.at("mu01").get<double>();
                o.mu[1][1] = item.at("mu11").get<double>();
                mus.push_back(o);
            }
            std::vector<std::uint64_t> adjacency(static_cast<std::size_t>(g.node_count()), 0);
            for (int u = 0; u < g.node_count(); ++u) {
                for (int v : g.neighbors(u)) {
                    adjacency[static_cast<std::size_t>(u)] |= 1ull << v;
                }
            }
            j["fidelity"] = ghznet::hub_graph_state_fidelity(adjacency, mus);
        }
        emit(j.dump(2), fid_out);
        return 0;
    }

    if (thr->parsed()) {
        ghznet::ChannelKind kind = parse_channel(thr_channel);
        if (thr_n_to > 0) {
            if (thr_out.empty()) {
                throw std::invalid_argument("grid mode needs --out for the CSV");
            }
            std::vector<int> n_values;
            for (int n = thr_n; n <= thr_n_to; ++n) {
                n_values.push_back(n);
            }
            std::vector<double> fidelities = {thr_f};
            fidelities.insert(fidelities.end(), thr_f_list.begin(), thr_f_list.end());
            ghznet::write_threshold_csv(ghznet::run_threshold_grid(kind, n_values, fidelities),
                                        thr_out);
            return 0;
        }
        json j = {{"channel", thr_channel},
                  {"n", thr_n},
                  {"fidelity", thr_f},
                  {"max_parameter", ghznet::noise_threshold(kind, thr_n, thr_f)}};
        emit(j.dump(2), thr_out);
        return 0;
    }

    if (ver->parsed()) {
        ghznet::VerifyReport report = ghznet::run_verification_suite(ver_trials, ver_seed);
        emit(report.to_json(), ver_out);
        return report.all_passed() ? 0 : 1;
    }

    if (sw->parsed()) {
        json cfg_json = json::parse(read_text(sw_config));
        ghznet::SweepConfig cfg;
        std::string model = cfg_json.value("model", "er");
        cfg.model = model == "er"   ? ghznet::NetModel::er
                    : model == "ba" ? ghznet::NetModel::ba
                                    : ghznet::NetModel::waxman;
        cfg.n_values = cfg_json.at("n_values").get<std::vector<int>>();
        if (cfg_json.contains("diameter_values")) {
            cfg.diameter_values = cfg_json.at("diameter_values").get<std::vector<double>>();
        }
        cfg.p = cfg_json.value("p", 0.05);
        if (cfg_json.contains("c")) {
            cfg.c = cfg_json.at("c").get<int>();
        }
        cfg.beta = cfg_json.value("beta", 1.0);
        cfg.attenuation_km = cfg_json.value("l0_km", 22.0);
        cfg.diameter_km = cfg_json.value("diameter_km", 100.0);
        cfg.samples = cfg_json.value("samples", 1);
        cfg.subset_fraction = cfg_json.value("f", 1.0);
        cfg.seed = cfg_json.value("seed", 0ull);
        cfg.run_steiner = cfg_json.value("steiner", true);
        cfg.run_star_expansion = cfg_json.value("star_expansion", true);
        cfg.run_mds = cfg_json.value("mds", true);
        cfg.threads = cfg_json.value("threads", 0);
        std::string out_csv = cfg_json.value("out", "trials.csv");
        std::string out_summary = cfg_json.value("summary", "");

        std::vector<ghznet::TrialRecord> records = ghznet::run_sweep(cfg);
        ghznet::write_trials_csv(records, out_csv);
        if (!out_summary.empty()) {
            write_text(out_summary, ghznet::sweep_summary_json(records));
        }
        std::cout << "wrote " << records.size() << " trials to " << out_csv << "\n";
        return 0;
    }

    if (pd->parsed()) {
        ghznet::emit_plotdata(pd_csv, pd_outdir);
        std::cout << "wrote figure aggregates to " << pd_outdir << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
