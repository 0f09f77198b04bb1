#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lrp/components.hpp"
#include "lrp/params.hpp"
#include "lrp/sampler.hpp"
#include "lrp/stats.hpp"

// Monte Carlo experiment orchestration. Every run is a deterministic
// function of (config, master seed): replica seeds derive from
// (master, n-index, replica), work is distributed over a thread pool, and
// aggregation folds results in replica order regardless of completion order.

namespace lrp {

struct ExperimentConfig {
    LrpParams params;
    std::vector<Index> n_grid;    // strictly increasing site counts, each an exact d-th power
    int replicas = 1;
    std::uint64_t master_seed = 0;
    std::vector<Index> k_grid;    // tail experiment thresholds
    double rho = 0.1;             // origin-giant density threshold
    std::vector<double> beta_grid;  // renormalization scan
    std::string output_dir;       // empty: $LRP_OUTPUT_DIR, else "."
    int threads = 0;              // 0: hardware concurrency

    void validate(bool tail_mode) const;
    std::string resolved_output_dir() const;
    int resolved_threads() const;

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
};

// Largest admissible tail threshold at box size n: floor(n / (ln n)^(2d/(d-1))).
Index tail_regime_max_k(Index n, int d);

// Runs fn(0..jobs-1) over `threads` workers; any exception is rethrown.
void parallel_for(std::size_t jobs, int threads, const std::function<void(std::size_t)>& fn);

// CSV output with a checksummed header line ("# lrp-csv <schema> fnv64=...").
// In append mode an existing file must carry the identical two header lines.
class CsvFile {
public:
    CsvFile(const std::string& path, const std::string& schema, const std::string& header, bool append = false);
    ~CsvFile();
    void row(const std::string& line);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    void* stream_;  // std::ofstream, kept out of the header
};

// Per-replica component summary for one (n, replica) cell; the shared
// sampling path of every experiment below.
ComponentSummary replica_summary(const ClassTable& table, std::uint64_t seed);

std::uint64_t replica_seed(std::uint64_t master, std::size_t n_index, std::size_t replica);

// --- second-largest component sweep -------------------------------------

struct ScalingRow {
    Index n = 0;
    int replicas = 0;
    double c2_median = 0.0, c2_q1 = 0.0, c2_q3 = 0.0;
    double norm_median = 0.0, norm_q1 = 0.0, norm_q3 = 0.0;  // |C2| / (ln n)^(d/(d-1))
    double theta_mean = 0.0;
    bool near_critical = false;  // theta below 1/2 flags a dubious regime
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    std::string summary_csv;
    std::string raw_csv;
};

ScalingResult run_second_largest_sweep(const ExperimentConfig& config);

// --- cluster-size tail ----------------------------------------------------

struct TailCurve {
    Index n = 0;
    std::vector<Index> k_values;
    std::vector<std::uint64_t> positive_counts;
    std::vector<double> estimates;   // P(|C(0)| >= k and origin not in C1)
    std::vector<double> std_errors;
    std::optional<OlsFit> zeta;      // slope of log(-log P) on log k
    std::size_t fit_points = 0;
    std::string csv;

    double zeta_hat() const { return zeta ? zeta->slope : 0.0; }
};

// Runs at the largest n of the grid; refuses thresholds beyond the
// admissible regime. The exponent fit uses points with at least 25 positive
// counts; zero-count cells are dropped, never smoothed.
TailCurve run_tail_experiment(const ExperimentConfig& config);

// --- law of large numbers for the giant ----------------------------------

struct LlnRow {
    Index n = 0;
    int replicas = 0;
    double theta_mean = 0.0;
    double theta_std = 0.0;
    double origin_giant_freq = 0.0;  // fraction of replicas with |C(0)| >= rho n
    bool near_critical = false;
};

struct LlnResult {
    double rho = 0.0;
    std::vector<LlnRow> rows;
    std::string csv;
};

LlnResult run_lln_experiment(const ExperimentConfig& config);

// --- renormalization scan -------------------------------------------------

struct RenormRow {
    double beta = 0.0;
    int replica = 0;
    std::uint64_t seed = 0;
    Index coarse_count = 0;
    double active_fraction = 0.0;
    Index adjacent_active_pairs = 0;
    Index open_pairs = 0;
    Index largest_cluster = 0;
    Index min_occupancy = 0;
    Index certified_bound = 0;  // largest cluster x min occupancy
    Index measured_c1 = 0;
    bool bound_ok = false;
};

struct RenormResult {
    std::vector<RenormRow> rows;
    std::vector<double> active_fraction_means;  // one per beta in the grid
    std::string csv;
};

// Uses n = n_grid.back() and scans config.beta_grid (params.beta when the
// grid is empty).
RenormResult run_renorm_experiment(const ExperimentConfig& config);

// Mean theta over replicas at one box size; the pre-registration pilot for
// choosing supercritical reference parameters.
double pilot_theta(const LrpParams& params, Index n, int replicas, std::uint64_t master_seed, int threads);

}  // namespace lrp
