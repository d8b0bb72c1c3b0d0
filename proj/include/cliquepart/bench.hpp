#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cliquepart/clustering.hpp"
#include "cliquepart/graph.hpp"
#include "cliquepart/metrics.hpp"

namespace cliquepart {

/// One row of the synthetic-benchmark parameter grid.
struct LfrGridRow {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 0.0;
    int replicate = 0;
    int d_max = 0;          // round(alpha * n)
    double avg_degree = 0;  // beta * alpha * log10(n)
};

/// Cartesian product over the parameter sets, `replicates` rows each.
std::vector<LfrGridRow> lfr_parameter_grid(const std::vector<int>& n_set,
                                           const std::vector<double>& alpha_set,
                                           const std::vector<double>& beta_set,
                                           const std::vector<double>& mu_set,
                                           int replicates);

/// CSV with columns n,d_max,avg_degree,mu,replicate,seed.
void write_grid_csv(const std::vector<LfrGridRow>& rows, std::ostream& out);

/// "vertex_id community_id" per line; duplicate vertices are an error.
std::vector<std::pair<std::int64_t, std::int64_t>> load_ground_truth(std::istream& in);
std::vector<std::pair<std::int64_t, std::int64_t>> load_ground_truth_file(
    const std::string& path);

/// Matches a ground-truth listing against g's original labels; every vertex
/// of g must be present exactly once.
Partition align_ground_truth(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& raw, const Graph& g);

/// k equal blocks; intra-block pairs edged with probability p_in, inter-block
/// with p_out. Deterministic for a given seed. Labels are 0..n-1.
std::pair<Graph, Partition> planted_partition_graph(int n, int k, double p_in,
                                                    double p_out, std::uint64_t seed);

enum class Algorithm { Aggl, KMeans, AutoK };

std::string algorithm_name(Algorithm a);

struct ExperimentConfig {
    std::string dataset_path;
    std::string dataset_name;  // defaults to the path when empty
    Algorithm algorithm = Algorithm::AutoK;
    std::optional<int> k;  // required for Aggl / KMeans
    std::uint64_t seed = 0;
    std::string ground_truth_path;  // optional
    std::size_t max_cliques = 0;
    std::size_t memory_budget_bytes = 2ull << 30;
};

struct PipelineResult {
    Partition partition;
    MetricsReport report;
};

/// Runs embed -> cluster -> metrics on an already-parsed graph.
PipelineResult run_pipeline(const Graph& g, const ExperimentConfig& cfg,
                            const Partition* ground_truth);

/// Full experiment: parse, pipeline, metrics, per-phase timings.
MetricsReport run_experiment(const ExperimentConfig& cfg);

/// Per-report rows in a stable column/key order.
void emit_report(const std::vector<MetricsReport>& reports, const std::string& format,
                 std::ostream& out, bool include_timings = true);

}  // namespace cliquepart
