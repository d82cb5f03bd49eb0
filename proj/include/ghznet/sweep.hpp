#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghznet/noise.hpp"

namespace ghznet {

enum class NetModel { er, ba, waxman };

// One sweep point is a (model instance, subset fraction) pair; trials vary
// only in their derived seed.
struct SweepConfig {
    NetModel model = NetModel::er;
    std::vector<int> n_values;            // network sizes
    std::vector<double> diameter_values;  // Waxman only; sweeps D at fixed n
    double p = 0.05;                      // ER probability / BA fraction basis
    std::optional<int> c;                 // BA attachment count; default ceil(n*p)
    double beta = 1.0;                    // Waxman
    double attenuation_km = 22.0;         // Waxman
    double diameter_km = 100.0;           // Waxman, when diameter_values empty
    int samples = 1;
    double subset_fraction = 1.0;         // f in (0,1]; 1 = complete case
    std::uint64_t seed = 0;
    bool run_steiner = true;
    bool run_star_expansion = true;
    bool run_mds = true;
    int threads = 0;  // 0 = hardware default

    void validate() const;
};

struct TrialRecord {
    long long trial = 0;
    std::uint64_t seed = 0;
    std::string model;
    int n = 0;
    double p = 0.0;
    int c = 0;
    double beta = 0.0;
    double attenuation_km = 0.0;
    double diameter_km = 0.0;
    double subset_fraction = 1.0;
    int subgraph_size = 0;  // S
    long long gates_plan = 0;
    long long gates_star_expansion = 0;
    long long bell_pairs = 0;
    long long sources_msg = 0;
    long long sources_internal = 0;
    long long sources_mds_plan = 0;
    long long sources_mds_mst = 0;
    long long steiner_nodes = 0;
    double subset_ratio_plan = 0.0;
    double subset_ratio_steiner = 0.0;
    int lcc_size = 0;
    double lcc_density = 0.0;
    double runtime_ms = 0.0;  // excluded from determinism comparisons
};

// Fixed, versioned column set; runtime_ms is last so determinism checks can
// strip it.
std::string trial_csv_header();
std::string trial_csv_row(const TrialRecord& r);

// One trial per (point, sample); deterministic per master seed, regardless
// of the worker count. Records are returned in trial order.
std::vector<TrialRecord> run_sweep(const SweepConfig& cfg);
void write_trials_csv(const std::vector<TrialRecord>& records, const std::string& path);
std::string sweep_summary_json(const std::vector<TrialRecord>& records);

struct ThresholdRow {
    std::string channel;
    int n = 0;
    double fidelity = 0.0;
    double max_parameter = 0.0;
};

std::vector<ThresholdRow> run_threshold_grid(ChannelKind kind, const std::vector<int>& n_values,
                                             const std::vector<double>& fidelities);
void write_threshold_csv(const std::vector<ThresholdRow>& rows, const std::string& path);

// Tidy per-figure aggregates (mean and standard error of the chosen columns
// per x value) from a trial CSV. Writes fig4.csv, fig5L.csv, fig5R.csv,
// fig6a-d.csv, fig7.csv, fig8.csv into out_dir.
void emit_plotdata(const std::string& trials_csv_path, const std::string& out_dir);

}  // namespace ghznet
