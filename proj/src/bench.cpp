#include "cliquepart/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cliquepart/embedding.hpp"

namespace cliquepart {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<LfrGridRow> lfr_parameter_grid(const std::vector<int>& n_set,
                                           const std::vector<double>& alpha_set,
                                           const std::vector<double>& beta_set,
                                           const std::vector<double>& mu_set,
                                           int replicates) {
    if (n_set.empty() || alpha_set.empty() || beta_set.empty() || mu_set.empty() ||
        replicates < 1)
        throw std::invalid_argument("parameter sets must be nonempty");
    std::vector<LfrGridRow> rows;
    rows.reserve(n_set.size() * alpha_set.size() * beta_set.size() * mu_set.size() *
                 replicates);
    for (int n : n_set) {
        for (double alpha : alpha_set) {
            for (double beta : beta_set) {
                for (double mu : mu_set) {
                    for (int r = 1; r <= replicates; ++r) {
                        LfrGridRow row;
                        row.n = n;
                        row.alpha = alpha;
                        row.beta = beta;
                        row.mu = mu;
                        row.replicate = r;
                        row.d_max = static_cast<int>(std::llround(alpha * n));
                        row.avg_degree = beta * alpha * std::log10(static_cast<double>(n));
                        rows.push_back(row);
                    }
                }
            }
        }
    }
    return rows;
}

void write_grid_csv(const std::vector<LfrGridRow>& rows, std::ostream& out) {
    out << "n,d_max,avg_degree,mu,replicate,seed\n";
    out.precision(12);
    std::uint64_t seed = 1;
    for (const auto& r : rows) {
        out << r.n << ',' << r.d_max << ',' << r.avg_degree << ',' << r.mu << ','
            << r.replicate << ',' << seed++ << '\n';
    }
}

std::vector<std::pair<std::int64_t, std::int64_t>> load_ground_truth(std::istream& in) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::set<std::int64_t> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == '%') continue;
        std::istringstream ls(line);
        std::int64_t v, c;
        if (!(ls >> v >> c))
            throw ParseError("malformed community line " + std::to_string(lineno));
        if (!seen.insert(v).second)
            throw std::runtime_error("vertex " + std::to_string(v) +
                                     " listed twice in community file");
        raw.emplace_back(v, c);
    }
    if (raw.empty()) throw ParseError("empty community file");
    return raw;
}

std::vector<std::pair<std::int64_t, std::int64_t>> load_ground_truth_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return load_ground_truth(in);
}

Partition align_ground_truth(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& raw, const Graph& g) {
    std::unordered_map<std::int64_t, std::int64_t> by_vertex;
    for (const auto& [v, c] : raw) by_vertex.emplace(v, c);
    std::vector<int> assignment(g.n);
    std::unordered_map<std::int64_t, int> block_ids;
    for (int v = 0; v < g.n; ++v) {
        auto it = by_vertex.find(g.labels[v]);
        if (it == by_vertex.end())
            throw std::runtime_error("vertex " + std::to_string(g.labels[v]) +
                                     " missing from community file");
        auto [bit, _] = block_ids.emplace(it->second, static_cast<int>(block_ids.size()));
        assignment[v] = bit->second;
    }
    return Partition::from_assignment(std::move(assignment));
}

std::pair<Graph, Partition> planted_partition_graph(int n, int k, double p_in,
                                                    double p_out, std::uint64_t seed) {
    if (k < 1 || n % k != 0) throw std::invalid_argument("k must divide n");
    if (!(0.0 <= p_out && p_out < p_in && p_in <= 1.0))
        throw std::invalid_argument("need 0 <= p_out < p_in <= 1");
    const int block = n / k;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double p = (i / block == j / block) ? p_in : p_out;
            if (uniform01(rng) < p) edges.emplace_back(i, j);
        }
    }
    Graph g = build_graph(n, std::move(edges));
    std::vector<int> assignment(n);
    for (int v = 0; v < n; ++v) assignment[v] = v / block;
    Partition truth;
    truth.assignment = std::move(assignment);
    truth.k = k;
    return {std::move(g), std::move(truth)};
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Aggl:
            return "aggl";
        case Algorithm::KMeans:
            return "kmeans";
        case Algorithm::AutoK:
            return "auto-k";
    }
    return "?";
}

PipelineResult run_pipeline(const Graph& g, const ExperimentConfig& cfg,
                            const Partition* ground_truth) {
    PipelineResult out;
    MetricsReport& rep = out.report;
    rep.dataset = cfg.dataset_name.empty() ? cfg.dataset_path : cfg.dataset_name;
    rep.algorithm = algorithm_name(cfg.algorithm);
    rep.seed = cfg.seed;

    if (cfg.algorithm == Algorithm::KMeans) {
        if (!cfg.k) throw std::invalid_argument("k-means requires k");
        EmbedResult er = embed(g, cfg.max_cliques);
        rep.per_phase_seconds = er.phase_seconds;
        auto t0 = std::chrono::steady_clock::now();
        out.partition = kmeans(er.embedding, *cfg.k, cfg.seed);
        rep.per_phase_seconds["clustering"] = seconds_since(t0);
    } else {
        DistanceBuild db =
            build_distance_matrix(g, cfg.max_cliques, cfg.memory_budget_bytes);
        rep.per_phase_seconds = db.phase_seconds;
        const std::vector<int> active = std::move(db.active);
        auto t0 = std::chrono::steady_clock::now();
        Dendrogram dg = agglomerative_hierarchy(std::move(db.d));
        rep.per_phase_seconds["clustering"] = seconds_since(t0);
        if (cfg.algorithm == Algorithm::Aggl) {
            if (!cfg.k) throw std::invalid_argument("agglomerative cut requires k");
            out.partition = expand_partition(cut(dg, *cfg.k), active, g.n);
        } else {
            t0 = std::chrono::steady_clock::now();
            AutoKResult ak = auto_k(dg, g, active);
            out.partition = std::move(ak.partition);
            rep.per_phase_seconds["auto-k"] = seconds_since(t0);
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    rep.k = out.partition.k;
    rep.modularity = modularity(g, out.partition);
    rep.permanence = permanence(g, out.partition);
    if (ground_truth) rep.nmi = nmi(out.partition, *ground_truth);
    rep.per_phase_seconds["metrics"] = seconds_since(t0);
    return out;
}

MetricsReport run_experiment(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    auto [g, vm] = parse_edge_list_file(cfg.dataset_path);
    const double parse_s = seconds_since(t0);

    Partition truth;
    const Partition* truth_ptr = nullptr;
    if (!cfg.ground_truth_path.empty()) {
        truth = align_ground_truth(load_ground_truth_file(cfg.ground_truth_path), g);
        truth_ptr = &truth;
    }
    PipelineResult res = run_pipeline(g, cfg, truth_ptr);
    res.report.per_phase_seconds["parse"] = parse_s;
    return res.report;
}

void emit_report(const std::vector<MetricsReport>& reports, const std::string& format,
                 std::ostream& out, bool include_timings) {
    if (format == "csv") {
        out << MetricsReport::csv_header(include_timings) << '\n';
        for (const auto& r : reports) out << r.csv_row(include_timings) << '\n';
    } else if (format == "json") {
        out << "[";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) out << ",";
            out << "\n  " << reports[i].to_json(include_timings);
        }
        out << (reports.empty() ? "]" : "\n]") << '\n';
    } else {
        throw std::invalid_argument("unknown report format '" + format + "'");
    }
}

}  // namespace cliquepart
