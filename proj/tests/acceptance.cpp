// End-to-end acceptance checks. Each check prints exactly one PASS/FAIL line;
// the process exits nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cliquepart/bench.hpp"
#include "cliquepart/cliques.hpp"
#include "cliquepart/clustering.hpp"
#include "cliquepart/embedding.hpp"
#include "cliquepart/graph.hpp"
#include "cliquepart/metrics.hpp"
#include "oracles.hpp"

using namespace cliquepart;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << idx << ". " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::string data_path(const char* file) { return std::string(DATA_DIR) + "/" + file; }

bool golden_matrices(std::string& detail) {
    const auto t0 = Clock::now();
    Graph g = oracles::example_graph();
    CliqueSet cs = enumerate_maximal_cliques(g);
    Eigen::MatrixXd y = Eigen::MatrixXd(incidence_matrix(g, cs));
    Eigen::MatrixXd x = Eigen::MatrixXd(coparticipation_matrix(g, cs));
    Eigen::MatrixXd z = Eigen::MatrixXd(
        vertex_community_matrix(coparticipation_matrix(g, cs), incidence_matrix(g, cs)));
    Eigen::MatrixXd ey(7, 3), ex(7, 7), ez(7, 3);
    ey << 1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1;
    ex << 3, 3, 3, 0, 0, 0, 0,
          3, 6, 6, 3, 0, 0, 0,
          3, 6, 6, 3, 0, 0, 0,
          0, 3, 3, 3, 0, 0, 0,
          0, 0, 0, 0, 3, 3, 3,
          0, 0, 0, 0, 3, 3, 3,
          0, 0, 0, 0, 3, 3, 3;
    ez << 9, 6, 0, 15, 15, 0, 15, 15, 0, 6, 9, 0, 0, 0, 9, 0, 0, 9, 0, 0, 9;
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "dt=" << dt << "s";
    detail = os.str();
    return y == ey && x == ex && z == ez && dt < 1.0;
}

bool tfidf_worked_value(std::string& detail) {
    const auto t0 = Clock::now();
    Graph g = oracles::example_graph();
    CliqueSet cs = enumerate_maximal_cliques(g);
    SparseMatrixD z = vertex_community_matrix(coparticipation_matrix(g, cs),
                                              incidence_matrix(g, cs));
    Eigen::MatrixXd w = Eigen::MatrixXd(apply_tfidf(z, idf_vector(z)));
    const double v = w(0, 1);
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "Z12=" << v << " dt=" << dt << "s";
    detail = os.str();
    return std::abs(v - 4.84) <= 0.05 && dt < 1.0;
}

bool karate_clique_count(std::string& detail) {
    const auto t0 = Clock::now();
    auto [g, vm] = parse_edge_list_file(data_path("karate.edges"));
    CliqueSet cs = enumerate_maximal_cliques(g);
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "n=" << g.n << " m=" << g.m << " cliques=" << cs.size() << " dt=" << dt
       << "s";
    detail = os.str();
    return g.n == 34 && g.m == 78 && cs.size() == 36 && dt < 10.0;
}

bool modularity_oracle(std::string& detail) {
    int tested = 0, bad = 0;
    for (std::uint64_t seed = 0; tested < 200; ++seed) {
        const int n = 5 + static_cast<int>(seed % 16);
        Graph g = oracles::random_graph(n, 0.3, seed);
        if (g.m == 0) continue;
        Partition p = oracles::random_partition(n, 1 + static_cast<int>(seed % 5),
                                                seed + 4000);
        if (std::abs(modularity(g, p) - oracles::modularity_bruteforce(g, p)) > 1e-12)
            ++bad;
        Partition one = Partition::from_assignment(std::vector<int>(n, 0));
        if (modularity(g, one) != 0.0) ++bad;
        ++tested;
    }
    std::ostringstream os;
    os << tested << " pairs, " << bad << " mismatches";
    detail = os.str();
    return bad == 0;
}

bool clique_oracle(std::string& detail) {
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 4 + static_cast<int>(seed % 9);
        const double p = 0.1 + 0.08 * static_cast<double>(seed % 10);
        Graph g = oracles::random_graph(n, p, seed);
        if (enumerate_maximal_cliques(g).cliques !=
            oracles::brute_force_maximal_cliques(g))
            ++bad;
    }
    std::ostringstream os;
    os << "100 graphs, " << bad << " mismatches";
    detail = os.str();
    return bad == 0;
}

bool permanence_properties(std::string& detail) {
    bool ok = true;
    // Isolated-clique blocks score exactly 1 per vertex.
    Graph two = build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    Partition ptwo = Partition::from_assignment({0, 0, 0, 1, 1, 1});
    for (int v = 0; v < 6; ++v) ok = ok && permanence_vertex(two, ptwo, v) == 1.0;
    // The 7-vertex toy 2-partition.
    const double pg = permanence(oracles::example_graph(), oracles::example_two_blocks());
    ok = ok && std::abs(pg - 19.0 / 21) <= 1e-12;
    // Range on random instances.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Graph g = oracles::random_graph(15, 0.3, seed);
        Partition p = oracles::random_partition(15, 1 + static_cast<int>(seed % 4),
                                                seed + 900);
        for (int v = 0; v < g.n; ++v) {
            const double pv = permanence_vertex(g, p, v);
            ok = ok && pv >= -1.0 - 1e-12 && pv <= 1.0 + 1e-12;
        }
    }
    std::ostringstream os;
    os << "toy P(G)=" << pg;
    detail = os.str();
    return ok;
}

bool auto_k_quality(std::string& detail) {
    // The 7-vertex toy first.
    Graph toy = oracles::example_graph();
    EmbedResult toy_er = embed(toy);
    Dendrogram toy_dg = agglomerative_hierarchy(pipeline_distance_matrix(toy_er));
    AutoKResult toy_r = auto_k(toy_dg, toy);
    bool ok = toy_r.k == 2 && std::abs(toy_r.modularity - 0.46875) <= 1e-12;
    int below = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int n = 20 + static_cast<int>(seed % 9) * 10;  // 20..100
        Graph g = oracles::random_graph(n, 6.0 / n, seed + 70);
        if (g.m == 0) continue;
        EmbedResult er = embed(g);
        std::vector<int> active = active_vertices(er.embedding);
        Dendrogram dg = agglomerative_hierarchy(pipeline_distance_matrix(er));
        AutoKResult r = auto_k(dg, g, active);
        double sweep = -1.0;
        for (int k = 1; k <= dg.leaves; ++k)
            sweep = std::max(sweep,
                             modularity(g, expand_partition(cut(dg, k), active, g.n)));
        const double bar = sweep >= 0 ? 0.98 * sweep : sweep / 0.98;
        if (r.modularity < bar - 1e-12) ++below;
    }
    std::ostringstream os;
    os << "toy k=" << toy_r.k << " Q=" << toy_r.modularity << "; " << below
       << "/50 below 0.98*sweep";
    detail = os.str();
    return ok && below == 0;
}

bool planted_recovery(std::string& detail) {
    const auto t0 = Clock::now();
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto [g, truth] = planted_partition_graph(200, 4, 0.9, 0.02, seed);
        ExperimentConfig cfg;
        cfg.algorithm = Algorithm::AutoK;
        cfg.seed = seed;
        PipelineResult res = run_pipeline(g, cfg, &truth);
        if (res.partition.k == 4 && res.report.nmi && *res.report.nmi >= 0.95) ++good;
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << good << "/10 seeds recovered, dt=" << dt << "s";
    detail = os.str();
    return good >= 9 && dt < 30.0;
}

bool grid_endpoints(std::string& detail) {
    auto rows = lfr_parameter_grid({100, 2000}, {1.0 / 20, 1.0 / 3}, {30, 40},
                                   {0.1}, 1);
    auto avg = [&](int n, double alpha, double beta) {
        for (const auto& r : rows)
            if (r.n == n && r.alpha == alpha && r.beta == beta) return r.avg_degree;
        return -1.0;
    };
    const double a = avg(100, 1.0 / 20, 30);
    const double b = avg(2000, 1.0 / 20, 30);
    const double c = avg(100, 1.0 / 3, 40);
    const double d = avg(2000, 1.0 / 3, 40);
    std::ostringstream os;
    os << a << " / " << b << " / " << c << " / " << d;
    detail = os.str();
    return std::abs(a - 3.0) <= 1e-9 && std::abs(b - 4.95) <= 0.05 &&
           std::abs(c - 26.7) <= 0.1 && std::abs(d - 44.0) <= 0.1;
}

bool scale_runtime(std::string& detail) {
    // A sparse ~10k-vertex / ~40k-edge instance with clique counts in the
    // tens of thousands, like large peer-to-peer networks.
    const auto tgen = Clock::now();
    Graph g = oracles::random_graph(10000, 40000.0 / (10000.0 * 9999.0 / 2), 424242);
    const double gen_s = seconds_since(tgen);
    const auto t0 = Clock::now();
    ExperimentConfig cfg;
    cfg.algorithm = Algorithm::AutoK;
    cfg.seed = 1;
    cfg.memory_budget_bytes = 4ull << 30;
    PipelineResult res = run_pipeline(g, cfg, nullptr);
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "n=" << g.n << " m=" << g.m << " k=" << res.partition.k
       << " Q=" << res.report.modularity << " dt=" << dt << "s (gen " << gen_s
       << "s excluded)";
    detail = os.str();
    return dt < 300.0;
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool determinism(std::string& detail) {
    const std::string cli = CLI_BIN;
    const std::string karate = data_path("karate.edges");
    const std::string toy = data_path("toy.edges");
    bool ok = true;
    std::ostringstream why;

    auto twice_identical = [&](const std::string& args, const std::string& out_a,
                               const std::string& out_b, const std::string& label) {
        const int rc1 = run(cli + " " + args + out_a + " >" + out_a + ".stdout 2>/dev/null");
        const int rc2 = run(cli + " " + args + out_b + " >" + out_b + ".stdout 2>/dev/null");
        const bool same = rc1 == 0 && rc2 == 0 && slurp(out_a) == slurp(out_b) &&
                          !slurp(out_a).empty() &&
                          slurp(out_a + ".stdout") == slurp(out_b + ".stdout");
        if (!same) {
            ok = false;
            why << label << " differs; ";
        }
    };

    twice_identical("partition " + karate + " --auto-k --seed 7 --out ", "acc_p1.txt",
                    "acc_p2.txt", "partition/auto-k");
    twice_identical("partition " + karate + " --method kmeans --k 3 --seed 5 --out ",
                    "acc_k1.txt", "acc_k2.txt", "partition/kmeans");
    twice_identical("--threads 4 partition " + toy + " --method aggl --k 2 --out ",
                    "acc_a1.txt", "acc_a2.txt", "partition/aggl");
    twice_identical("bench --datasets " + karate + " --method auto-k --seed 2 --out ",
                    "acc_b1.csv", "acc_b2.csv", "bench/csv");
    twice_identical("lfr-grid --out ", "acc_g1.csv", "acc_g2.csv", "lfr-grid");
    twice_identical("embed " + toy + " --out ", "acc_e1.txt", "acc_e2.txt", "embed");
    twice_identical("cliques " + karate + " --dump ", "acc_c1.txt", "acc_c2.txt",
                    "cliques");

    // Thread-count independence for a seeded path.
    run(cli + " --threads 1 partition " + karate +
        " --method kmeans --k 3 --seed 5 --out acc_t1.txt >/dev/null 2>&1");
    run(cli + " --threads 4 partition " + karate +
        " --method kmeans --k 3 --seed 5 --out acc_t4.txt >/dev/null 2>&1");
    if (slurp("acc_t1.txt") != slurp("acc_t4.txt") || slurp("acc_t1.txt").empty()) {
        ok = false;
        why << "thread-count dependence; ";
    }

    // Round trip: eval on the emitted partition reproduces the printed Q.
    const std::string eval_out = "acc_eval.json";
    run(cli + " eval " + karate + " acc_p1.txt >" + eval_out + " 2>/dev/null");
    const std::string ev = slurp(eval_out);
    const std::string part_stdout = slurp("acc_p1.txt.stdout");
    auto extract = [](const std::string& s, const std::string& key) {
        const auto pos = s.find(key);
        if (pos == std::string::npos) return std::string();
        const auto start = pos + key.size();
        return s.substr(start, s.find_first_of(",}", start) - start);
    };
    const std::string q_eval = extract(ev, "\"modularity\":");
    const std::string q_part = extract(part_stdout, "\"modularity\":");
    if (q_eval.empty() || q_eval != q_part) {
        ok = false;
        why << "eval round trip (" << q_part << " vs " << q_eval << "); ";
    }

    detail = why.str();
    return ok;
}

}  // namespace

int main() {
    std::string d;

    bool ok = golden_matrices(d);
    report(1, "golden embedding matrices on the 7-vertex example", ok, d);

    ok = tfidf_worked_value(d);
    report(2, "tf-idf worked value 6*log2(7/4)", ok, d);

    ok = karate_clique_count(d);
    report(3, "karate club maximal-clique count", ok, d);

    ok = modularity_oracle(d);
    report(4, "modularity equals the literal double sum", ok, d);

    ok = clique_oracle(d);
    report(5, "clique enumeration equals subset brute force", ok, d);

    ok = permanence_properties(d);
    report(6, "permanence values and range", ok, d);

    ok = auto_k_quality(d);
    report(7, "auto-k vs exhaustive k-sweep", ok, d);

    ok = planted_recovery(d);
    report(8, "planted-partition recovery (n=200, k=4)", ok, d);

    ok = grid_endpoints(d);
    report(9, "synthetic grid average-degree endpoints", ok, d);

    ok = scale_runtime(d);
    report(10, "10k-vertex auto-k pipeline under 5 minutes", ok, d);

    ok = determinism(d);
    report(11, "byte-identical reruns across subcommands", ok, d);

    if (failures == 0) {
        std::cout << "ALL 11 CHECKS PASSED" << std::endl;
        return 0;
    }
    std::cout << failures << " CHECK(S) FAILED" << std::endl;
    return 1;
}
