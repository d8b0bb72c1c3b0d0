#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cliquepart/embedding.hpp"
#include "cliquepart/graph.hpp"

namespace cliquepart {

/// One agglomerative merge: clusters `a` and `b` (a < b) join into `id`.
/// Leaves are 0..n-1; merge t creates id n+t.
struct DendrogramMerge {
    int a = 0;
    int b = 0;
    double distance = 0.0;
    int id = 0;
};

/// Full average-linkage merge history; cuttable at any k.
struct Dendrogram {
    int leaves = 0;
    std::vector<DendrogramMerge> merges;  // n-1 records, non-decreasing distance
};

/// Disjoint cover of 0..n-1 by blocks 0..k-1.
struct Partition {
    std::vector<int> assignment;
    int k = 0;

    std::vector<std::vector<int>> blocks() const;
    /// Renumbers block ids by the smallest vertex each block contains.
    static Partition from_assignment(std::vector<int> assignment);
};

struct AutoKResult {
    int k = 0;
    Partition partition;
    double modularity = 0.0;
};

/// Rows of the embedding that carry a nonzero (unit) vector, ascending.
std::vector<int> active_vertices(const Embedding& e);

/// Dense cosine distance D(i,j) = 1 - <z_i, z_j> over the active rows,
/// clamped to [0, 2]. Throws when n*n doubles exceed `memory_budget_bytes`.
Eigen::MatrixXd cosine_distance_matrix(const Embedding& e,
                                       std::size_t memory_budget_bytes = 2ull << 30);

/// Same distances computed without touching Z: the Gram matrix of the
/// weighted rows equals X * W * X with W(i,j) summing gamma^2 over the
/// cliques containing both i and j. Much cheaper than the direct route
/// when clique columns are dense (many cliques on few vertices).
Eigen::MatrixXd cosine_distance_via_coparticipation(const SparseMatrixD& x,
                                                    const CliqueSet& cs,
                                                    const Eigen::VectorXd& gamma,
                                                    const std::vector<int>& active);

/// Distance matrix for a pipeline result, picking whichever of the two
/// routes above is cheaper for the instance at hand.
Eigen::MatrixXd pipeline_distance_matrix(const EmbedResult& er,
                                         std::size_t memory_budget_bytes = 2ull << 30);

/// Distance matrix straight from the graph. Chooses the route before doing
/// any heavy work, so the weighted Z is only materialized when the direct
/// route is the cheaper one; the co-participation route reads only X.
struct DistanceBuild {
    Eigen::MatrixXd d;
    std::vector<int> active;  // vertex behind each row/column of d
    std::map<std::string, double> phase_seconds;  // cliques, matrices, tfidf
};
DistanceBuild build_distance_matrix(const Graph& g, std::size_t max_cliques = 0,
                                    std::size_t memory_budget_bytes = 2ull << 30);

/// Partition output format: "original_vertex_id block_id" per line,
/// sorted by vertex id.
void write_partition(const Partition& p, const Graph& g, std::ostream& out);

/// UPGMA via nearest-neighbor chain with Lance-Williams updates.
/// Ties pick the lowest candidate index; merges are reported in
/// non-decreasing distance order with consistent cluster ids.
Dendrogram agglomerative_hierarchy(Eigen::MatrixXd distances);

/// Partition induced by undoing the last k-1 merges.
Partition cut(const Dendrogram& dg, int k);

/// Seeded k-means++ / Lloyd over the embedding rows. Zero-row vertices are
/// appended as singleton blocks after the k clustered blocks.
Partition kmeans(const Embedding& e, int k, std::uint64_t seed);

/// Ternary search for the cut count maximizing modularity on the assumption
/// that Q(k) is near-bitonic, refined by an exhaustive +-5 window; the
/// trivial single-block partition is always a candidate. `leaf_vertices`
/// maps dendrogram leaves to vertices of g (identity when empty); vertices
/// of g absent from it become singleton blocks.
AutoKResult auto_k(const Dendrogram& dg, const Graph& g,
                   const std::vector<int>& leaf_vertices = {});

/// Expands a partition over `leaf_vertices` to all of g's vertices,
/// making each unmapped vertex its own block.
Partition expand_partition(const Partition& p, const std::vector<int>& leaf_vertices,
                           int n_total);

}  // namespace cliquepart
