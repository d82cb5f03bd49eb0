#include "ghznet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ghznet/baselines.hpp"
#include "ghznet/graph.hpp"
#include "ghznet/netgen.hpp"
#include "ghznet/planner.hpp"
#include "ghznet/rng.hpp"

namespace ghznet {

namespace {

struct SweepPoint {
    int n;
    double diameter_km;
};

std::vector<SweepPoint> sweep_points(const SweepConfig& cfg) {
    std::vector<SweepPoint> points;
    if (!cfg.diameter_values.empty()) {
        for (double d : cfg.diameter_values) {
            points.push_back({cfg.n_values.front(), d});
        }
    } else {
        for (int n : cfg.n_values) {
            points.push_back({n, cfg.diameter_km});
        }
    }
    return points;
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

TrialRecord run_trial(const SweepConfig& cfg, const SweepPoint& point, long long trial_index,
                      std::uint64_t trial_seed) {
    auto started = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = trial_index;
    rec.seed = trial_seed;
    rec.n = point.n;
    rec.p = cfg.p;
    rec.beta = cfg.beta;
    rec.attenuation_km = cfg.attenuation_km;
    rec.diameter_km = point.diameter_km;
    rec.subset_fraction = cfg.subset_fraction;

    Graph g;
    switch (cfg.model) {
        case NetModel::er: {
            rec.model = "er";
            g = gen_er_connected({point.n, cfg.p, trial_seed});
            break;
        }
        case NetModel::ba: {
            rec.model = "ba";
            int c = cfg.c.value_or(static_cast<int>(std::ceil(point.n * cfg.p)));
            rec.c = c;
            g = gen_ba({point.n, c, trial_seed});
            break;
        }
        case NetModel::waxman: {
            rec.model = "waxman";
            WaxmanResult w = gen_waxman(
                {point.n, point.diameter_km, cfg.beta, cfg.attenuation_km, trial_seed});
            ComponentResult lcc = largest_connected_component(w.graph);
            g = lcc.graph;
            break;
        }
    }
    rec.lcc_size = g.node_count();
    if (g.node_count() > 1) {
        rec.lcc_density = 2.0 * static_cast<double>(g.edge_count()) /
                          (static_cast<double>(g.node_count()) * (g.node_count() - 1));
    }
    if (g.node_count() < 2) {
        // Degenerate component; nothing to plan.
        rec.runtime_ms = 0.0;
        return rec;
    }

    // Desired subset: ceil(f*N) nodes sampled without replacement.
    Rng rng(trial_seed ^ 0xa5a5a5a5a5a5a5a5ull);
    int want = static_cast<int>(std::ceil(cfg.subset_fraction * g.node_count()));
    want = std::clamp(want, 2, g.node_count());
    std::vector<int> all(static_cast<std::size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) {
        all[static_cast<std::size_t>(v)] = v;
    }
    rng.shuffle(all);
    std::vector<int> desired(all.begin(), all.begin() + want);
    std::sort(desired.begin(), desired.end());

    bool complete = want == g.node_count();
    Graph planned_graph;
    Plan plan;
    if (complete) {
        planned_graph = g;
        plan = plan_complete(g, trial_seed);
    } else {
        SubsetPlan sp = plan_subset(g, desired, trial_seed);
        planned_graph = sp.plan.subgraph;
        plan = std::move(sp.plan);
    }
    CostReport cost = cost_report(plan);
    rec.subgraph_size = cost.subgraph_size;
    rec.gates_plan = cost.gates;
    rec.bell_pairs = cost.bell_pairs;
    rec.sources_msg = cost.sources;
    rec.subset_ratio_plan = static_cast<double>(cost.subgraph_size) / want;

    Graph plan_tree = plan_tree_graph(plan);
    rec.sources_internal = static_cast<long long>(internal_nodes(plan_tree).size());
    if (cfg.run_mds) {
        rec.sources_mds_plan = static_cast<long long>(greedy_dominating_set(plan_tree).size());
        Graph mst = spanning_tree(planned_graph);
        rec.sources_mds_mst = static_cast<long long>(greedy_dominating_set(mst).size());
    }

    if (cfg.run_steiner) {
        SteinerResult st = steiner_approx(g, desired);
        rec.steiner_nodes = st.node_count;
        rec.subset_ratio_steiner = static_cast<double>(st.node_count) / want;
        if (cfg.run_star_expansion) {
            // The star-expansion baseline runs on the Steiner tree in the
            // subset case and on the raw network in the complete case.
            if (complete) {
                rec.gates_star_expansion = star_expansion_gate_cost(g, trial_seed).total_gates;
            } else {
                ComponentResult pruned = largest_connected_component(st.tree);
                rec.gates_star_expansion =
                    star_expansion_gate_cost(pruned.graph, trial_seed).total_gates;
            }
        }
    } else if (cfg.run_star_expansion) {
        rec.gates_star_expansion = star_expansion_gate_cost(planned_graph, trial_seed).total_gates;
    }

    auto finished = std::chrono::steady_clock::now();
    rec.runtime_ms = std::chrono::duration<double, std::milli>(finished - started).count();
    return rec;
}

}  // namespace

void SweepConfig::validate() const {
    if (n_values.empty()) {
        throw std::invalid_argument("sweep config: n_values must be nonempty");
    }
    for (int n : n_values) {
        if (n < 2) {
            throw std::invalid_argument("sweep config: every n must be >= 2");
        }
    }
    if (!diameter_values.empty() && model != NetModel::waxman) {
        throw std::invalid_argument("sweep config: diameter_values require the waxman model");
    }
    if (!diameter_values.empty() && n_values.size() != 1) {
        throw std::invalid_argument("sweep config: diameter sweep needs a single n");
    }
    if (samples < 1) {
        throw std::invalid_argument("sweep config: samples must be >= 1");
    }
    if (!(subset_fraction > 0.0 && subset_fraction <= 1.0)) {
        throw std::invalid_argument("sweep config: subset fraction must be in (0,1]");
    }
}

std::string trial_csv_header() {
    return "# ghz-netplan trials v1\n"
           "trial,seed,model,n,p,c,beta,attenuation_km,diameter_km,subset_fraction,"
           "subgraph_size,gates_plan,gates_star_expansion,bell_pairs,sources_msg,"
           "sources_internal,sources_mds_plan,sources_mds_mst,steiner_nodes,"
           "subset_ratio_plan,subset_ratio_steiner,lcc_size,lcc_density,runtime_ms";
}

std::string trial_csv_row(const TrialRecord& r) {
    std::ostringstream out;
    out << r.trial << ',' << r.seed << ',' << r.model << ',' << r.n << ',' << format_double(r.p)
        << ',' << r.c << ',' << format_double(r.beta) << ',' << format_double(r.attenuation_km)
        << ',' << format_double(r.diameter_km) << ',' << format_double(r.subset_fraction) << ','
        << r.subgraph_size << ',' << r.gates_plan << ',' << r.gates_star_expansion << ','
        << r.bell_pairs << ',' << r.sources_msg << ',' << r.sources_internal << ','
        << r.sources_mds_plan << ',' << r.sources_mds_mst << ',' << r.steiner_nodes << ','
        << format_double(r.subset_ratio_plan) << ',' << format_double(r.subset_ratio_steiner)
        << ',' << r.lcc_size << ',' << format_double(r.lcc_density) << ','
        << format_double(r.runtime_ms);
    return out.str();
}

std::vector<TrialRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<SweepPoint> points = sweep_points(cfg);
    long long total = static_cast<long long>(points.size()) * cfg.samples;
    std::vector<TrialRecord> records(static_cast<std::size_t>(total));

    int workers = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, static_cast<int>(std::min<long long>(workers, total)));

    std::atomic<long long> next{0};
    auto worker = [&]() {
        while (true) {
            long long t = next.fetch_add(1);
            if (t >= total) {
                break;
            }
            const SweepPoint& point = points[static_cast<std::size_t>(t / cfg.samples)];
            std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
            records[static_cast<std::size_t>(t)] = run_trial(cfg, point, t, trial_seed);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    return records;
}

void write_trials_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write csv: " + path);
    }
    out << trial_csv_header() << "\n";
    for (const TrialRecord& r : records) {
        out << trial_csv_row(r) << "\n";
    }
}

std::string sweep_summary_json(const std::vector<TrialRecord>& records) {
    // Per (model, n, diameter) means and standard errors of the headline
    // counts.
    struct Acc {
        long long count = 0;
        double s_gates = 0.0, s2_gates = 0.0;
        double s_size = 0.0, s2_size = 0.0;
        double s_sources = 0.0, s2_sources = 0.0;
    };
    std::map<std::tuple<std::string, int, double>, Acc> groups;
    for (const TrialRecord& r : records) {
        Acc& acc = groups[{r.model, r.n, r.diameter_km}];
        ++acc.count;
        double gates = static_cast<double>(r.gates_plan);
        double size = static_cast<double>(r.subgraph_size);
        double sources = static_cast<double>(r.sources_msg);
        acc.s_gates += gates;
        acc.s2_gates += gates * gates;
        acc.s_size += size;
        acc.s2_size += size * size;
        acc.s_sources += sources;
        acc.s2_sources += sources * sources;
    }
    auto mean_err = [](double s, double s2, long long n) {
        double mean = s / n;
        double var = n > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1)) : 0.0;
        return std::make_pair(mean, n > 0 ? std::sqrt(var / n) : 0.0);
    };
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [key, acc] : groups) {
        nlohmann::json row;
        row["model"] = std::get<0>(key);
        row["n"] = std::get<1>(key);
        row["diameter_km"] = std::get<2>(key);
        row["samples"] = acc.count;
        auto [gm, ge] = mean_err(acc.s_gates, acc.s2_gates, acc.count);
        row["gates_plan_mean"] = gm;
        row["gates_plan_stderr"] = ge;
        auto [sm, se] = mean_err(acc.s_size, acc.s2_size, acc.count);
        row["subgraph_size_mean"] = sm;
        row["subgraph_size_stderr"] = se;
        auto [km, ke] = mean_err(acc.s_sources, acc.s2_sources, acc.count);
        row["sources_msg_mean"] = km;
        row["sources_msg_stderr"] = ke;
        j.push_back(row);
    }
    return j.dump(2);
}

std::vector<ThresholdRow> run_threshold_grid(ChannelKind kind, const std::vector<int>& n_values,
                                             const std::vector<double>& fidelities) {
    std::vector<ThresholdRow> rows;
    const char* name = kind == ChannelKind::depolarizing ? "depolarizing"
                       : kind == ChannelKind::dephasing  ? "dephasing"
                                                         : "amplitude_damping";
    for (double f : fidelities) {
        for (int n : n_values) {
            ThresholdRow row;
            row.channel = name;
            row.n = n;
            row.fidelity = f;
            row.max_parameter = noise_threshold(kind, n, f);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_threshold_csv(const std::vector<ThresholdRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write csv: " + path);
    }
    out << "# ghz-netplan thresholds v1\nchannel,n,fidelity,max_parameter\n";
    out.precision(15);
    for (const ThresholdRow& r : rows) {
        out << r.channel << ',' << r.n << ',' << r.fidelity << ',' << r.max_parameter << "\n";
    }
}

namespace {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) {
                return static_cast<int>(i);
            }
        }
        throw std::invalid_argument("plot-data: missing column " + name);
    }
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open csv: " + path);
    }
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!have_header) {
            table.columns = cells;
            have_header = true;
        } else {
            table.rows.push_back(cells);
        }
    }
    if (!have_header) {
        throw std::invalid_argument("csv has no header: " + path);
    }
    return table;
}

void write_aggregate(const CsvTable& table, const std::string& xcol,
                     const std::vector<std::string>& ycols, const std::string& path) {
    int xi = table.column_index(xcol);
    std::vector<int> yi;
    for (const std::string& y : ycols) {
        yi.push_back(table.column_index(y));
    }
    struct Acc {
        long long count = 0;
        std::vector<double> sum, sum2;
    };
    std::map<double, Acc> groups;
    for (const auto& row : table.rows) {
        double x = std::stod(row[static_cast<std::size_t>(xi)]);
        Acc& acc = groups[x];
        if (acc.sum.empty()) {
            acc.sum.assign(ycols.size(), 0.0);
            acc.sum2.assign(ycols.size(), 0.0);
        }
        ++acc.count;
        for (std::size_t k = 0; k < yi.size(); ++k) {
            double v = std::stod(row[static_cast<std::size_t>(yi[k])]);
            acc.sum[k] += v;
            acc.sum2[k] += v * v;
        }
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write: " + path);
    }
    out << xcol;
    for (const std::string& y : ycols) {
        out << ',' << y << "_mean," << y << "_stderr";
    }
    out << ",count\n";
    out.precision(12);
    for (const auto& [x, acc] : groups) {
        out << x;
        for (std::size_t k = 0; k < yi.size(); ++k) {
            double mean = acc.sum[k] / acc.count;
            double var = acc.count > 1
                             ? std::max(0.0, (acc.sum2[k] - acc.count * mean * mean) / (acc.count - 1))
                             : 0.0;
            out << ',' << mean << ',' << std::sqrt(var / acc.count);
        }
        out << ',' << acc.count << "\n";
    }
}

}  // namespace

void emit_plotdata(const std::string& trials_csv_path, const std::string& out_dir) {
    CsvTable table = read_csv(trials_csv_path);
    std::filesystem::create_directories(out_dir);
    auto path = [&out_dir](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    write_aggregate(table, "subgraph_size", {"gates_plan", "gates_star_expansion"}, path("fig4.csv"));
    write_aggregate(table, "p", {"gates_star_expansion"}, path("fig5L.csv"));
    write_aggregate(table, "p", {"gates_plan", "subgraph_size"}, path("fig5R.csv"));
    write_aggregate(table, "diameter_km", {"lcc_size"}, path("fig6a.csv"));
    write_aggregate(table, "diameter_km", {"lcc_density"}, path("fig6b.csv"));
    write_aggregate(table, "diameter_km", {"gates_plan", "gates_star_expansion"}, path("fig6c.csv"));
    write_aggregate(table, "lcc_size", {"gates_plan", "gates_star_expansion"}, path("fig6d.csv"));
    write_aggregate(table, "n", {"subset_ratio_plan", "subset_ratio_steiner"}, path("fig7.csv"));
    write_aggregate(table, "n",
                    {"sources_msg", "sources_internal", "sources_mds_plan", "sources_mds_mst"},
                    path("fig8.csv"));
}

}  // namespace ghznet
