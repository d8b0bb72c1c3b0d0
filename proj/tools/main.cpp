#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cliquepart/bench.hpp"
#include "cliquepart/cliques.hpp"
#include "cliquepart/clustering.hpp"
#include "cliquepart/embedding.hpp"
#include "cliquepart/graph.hpp"
#include "cliquepart/metrics.hpp"

namespace {

using namespace cliquepart;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

int cmd_cliques(const std::string& input, const std::string& dump_path) {
    auto [g, vm] = parse_edge_list_file(input);
    CliqueSet cs = enumerate_maximal_cliques(g);
    std::cout << "n=" << g.n << "\nm=" << g.m << "\nd=" << cs.size() << '\n';
    for (const auto& [size, count] : clique_size_distribution(cs))
        std::cout << size << ':' << count << '\n';
    if (!dump_path.empty()) {
        auto out = open_out(dump_path);
        write_clique_dump(cs, g, out);
    }
    return 0;
}

int cmd_embed(const std::string& input, const std::string& out_path) {
    auto [g, vm] = parse_edge_list_file(input);
    EmbedResult er = embed(g);
    auto out = open_out(out_path);
    write_embedding(er.embedding, out);
    auto map_out = open_out(out_path + ".map");
    write_vertex_mapping(g, map_out);
    return 0;
}

int cmd_partition(const std::string& input, const std::string& method, int k,
                  bool auto_k_flag, std::uint64_t seed, const std::string& out_path) {
    ExperimentConfig cfg;
    cfg.dataset_path = input;
    cfg.seed = seed;
    if (auto_k_flag) {
        cfg.algorithm = Algorithm::AutoK;
    } else {
        cfg.algorithm = method == "kmeans" ? Algorithm::KMeans : Algorithm::Aggl;
        cfg.k = k;
    }
    auto t0 = std::chrono::steady_clock::now();
    auto [g, vm] = parse_edge_list_file(input);
    cfg.dataset_name = input;
    PipelineResult res = run_pipeline(g, cfg, nullptr);
    res.report.per_phase_seconds["parse"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_partition(res.partition, g, out);
    }
    std::cerr << "k=" << res.report.k << " modularity=" << res.report.modularity
              << " seconds=" << res.report.seconds_total() << '\n';
    std::ostringstream os;
    os.precision(12);
    os << "{\"k\":" << res.report.k << ",\"modularity\":" << res.report.modularity
       << ",\"seed\":" << seed << "}";
    std::cout << os.str() << '\n';
    return 0;
}

int cmd_eval(const std::string& input, const std::string& partition_path,
             const std::string& gt_path) {
    auto [g, vm] = parse_edge_list_file(input);
    Partition p = align_ground_truth(load_ground_truth_file(partition_path), g);
    MetricsReport rep;
    rep.dataset = input;
    rep.algorithm = "eval";
    rep.k = p.k;
    rep.modularity = modularity(g, p);
    rep.permanence = permanence(g, p);
    if (!gt_path.empty()) {
        Partition truth = align_ground_truth(load_ground_truth_file(gt_path), g);
        rep.nmi = nmi(p, truth);
    }
    std::cout << rep.to_json(false) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximal-clique vertex embeddings for graph partitioning"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Internal parallelism cap (outputs are identical for any value)");

    auto* sc_cliques = app.add_subcommand("cliques", "Enumerate maximal cliques");
    std::string in_cliques, dump_path;
    sc_cliques->add_option("input", in_cliques, "Edge-list file")->required();
    sc_cliques->add_option("--dump", dump_path, "Write a clique dump to this path");

    auto* sc_embed = app.add_subcommand("embed", "Write the vertex embedding");
    std::string in_embed, embed_out;
    sc_embed->add_option("input", in_embed, "Edge-list file")->required();
    sc_embed->add_option("--out", embed_out, "Output path")->required();

    auto* sc_part = app.add_subcommand("partition", "Partition a graph");
    std::string in_part, method = "aggl", part_out;
    int k = 0;
    bool auto_k_flag = false;
    std::uint64_t seed = 0;
    sc_part->add_option("input", in_part, "Edge-list file")->required();
    sc_part->add_option("--method", method, "aggl or kmeans")
        ->check(CLI::IsMember({"aggl", "kmeans"}));
    auto* kopt = sc_part->add_option("--k", k, "Number of blocks");
    auto* akopt = sc_part->add_flag("--auto-k", auto_k_flag, "Search for the best k");
    kopt->excludes(akopt);
    sc_part->add_option("--seed", seed, "Random seed (default 0)");
    sc_part->add_option("--out", part_out, "Partition output file");

    auto* sc_eval = app.add_subcommand("eval", "Evaluate a partition file");
    std::string in_eval, eval_part, eval_gt;
    sc_eval->add_option("input", in_eval, "Edge-list file")->required();
    sc_eval->add_option("partition", eval_part, "Partition file")->required();
    sc_eval->add_option("--ground-truth", eval_gt, "Reference communities for NMI");

    auto* sc_grid = app.add_subcommand("lfr-grid", "Emit the synthetic parameter grid");
    std::vector<int> grid_n{100, 250, 500, 1000, 2000};
    std::vector<double> grid_alpha{1.0 / 20, 1.0 / 15, 1.0 / 10, 1.0 / 5, 1.0 / 3};
    std::vector<double> grid_beta{30, 35, 40};
    std::vector<double> grid_mu{0.1, 0.2, 0.3, 0.4, 0.5};
    int replicates = 5;
    std::string grid_out;
    sc_grid->add_option("--n", grid_n, "Vertex counts");
    sc_grid->add_option("--alpha", grid_alpha, "Max-degree fractions");
    sc_grid->add_option("--beta", grid_beta, "Average-degree factors");
    sc_grid->add_option("--mu", grid_mu, "Mixing parameters");
    sc_grid->add_option("--replicates", replicates, "Instances per setting");
    sc_grid->add_option("--out", grid_out, "CSV output path")->required();

    auto* sc_bench = app.add_subcommand("bench", "Run experiments and emit a report");
    std::vector<std::string> bench_inputs;
    std::string bench_method = "auto-k", bench_gt, bench_format = "csv", bench_out;
    int bench_k = 0;
    std::uint64_t bench_seed = 0;
    bool bench_timings = false;
    sc_bench->add_option("--datasets", bench_inputs, "Edge-list files")->required();
    sc_bench->add_option("--method", bench_method, "aggl, kmeans or auto-k")
        ->check(CLI::IsMember({"aggl", "kmeans", "auto-k"}));
    sc_bench->add_option("--k", bench_k, "Number of blocks (aggl/kmeans)");
    sc_bench->add_option("--ground-truth", bench_gt,
                         "Community file (single dataset only)");
    sc_bench->add_option("--format", bench_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sc_bench->add_option("--seed", bench_seed, "Random seed (default 0)");
    sc_bench->add_flag("--timings", bench_timings, "Include wall-clock columns");
    sc_bench->add_option("--out", bench_out, "Report output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (threads < 1) throw std::invalid_argument("--threads must be positive");
        if (sc_cliques->parsed()) return cmd_cliques(in_cliques, dump_path);
        if (sc_embed->parsed()) return cmd_embed(in_embed, embed_out);
        if (sc_part->parsed()) {
            if (auto_k_flag && method == "kmeans") {
                std::cerr << "error: --auto-k supports only the agglomerative method\n";
                return 1;
            }
            if (!auto_k_flag && kopt->count() == 0) {
                std::cerr << "error: exactly one of --k / --auto-k is required\n";
                return 1;
            }
            return cmd_partition(in_part, method, k, auto_k_flag, seed, part_out);
        }
        if (sc_eval->parsed()) return cmd_eval(in_eval, eval_part, eval_gt);
        if (sc_grid->parsed()) {
            auto rows = lfr_parameter_grid(grid_n, grid_alpha, grid_beta, grid_mu,
                                           replicates);
            auto out = open_out(grid_out);
            write_grid_csv(rows, out);
            return 0;
        }
        if (sc_bench->parsed()) {
            if (!bench_gt.empty() && bench_inputs.size() != 1) {
                std::cerr << "error: --ground-truth needs exactly one dataset\n";
                return 1;
            }
            std::vector<MetricsReport> reports;
            for (const auto& path : bench_inputs) {
                ExperimentConfig cfg;
                cfg.dataset_path = path;
                cfg.seed = bench_seed;
                cfg.ground_truth_path = bench_gt;
                if (bench_method == "aggl")
                    cfg.algorithm = Algorithm::Aggl;
                else if (bench_method == "kmeans")
                    cfg.algorithm = Algorithm::KMeans;
                else
                    cfg.algorithm = Algorithm::AutoK;
                if (cfg.algorithm != Algorithm::AutoK) {
                    if (bench_k < 1) {
                        std::cerr << "error: --k is required for " << bench_method << '\n';
                        return 1;
                    }
                    cfg.k = bench_k;
                }
                reports.push_back(run_experiment(cfg));
                std::cerr << path << ": k=" << reports.back().k
                          << " modularity=" << reports.back().modularity << '\n';
            }
            auto out = open_out(bench_out);
            emit_report(reports, bench_format, out, bench_timings);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
