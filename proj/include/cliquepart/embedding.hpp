#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cliquepart/cliques.hpp"
#include "cliquepart/graph.hpp"

namespace cliquepart {

/// Compressed sparse row, double values. Column indices are sorted per row
/// and construction never stores explicit zeros (Y, X).
using SparseMatrixD = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Unit-row vertex embedding over maximal cliques.
struct Embedding {
    SparseMatrixD z;             // n x d after idf weighting and row normalization
    Eigen::VectorXd gamma;       // idf factor per clique column
    std::vector<int> zero_rows;  // vertices whose row is all-zero (isolated)
};

/// Clique-incidence matrix Y (n x d): Y(i,l) = 1 iff vertex i is in clique l.
SparseMatrixD incidence_matrix(const Graph& g, const CliqueSet& cs);

/// Co-participation matrix X (n x n): X(i,j) sums the edge counts w of every
/// maximal clique containing both i and j; the diagonal sums w over the
/// cliques containing i. Symmetric; zero entries are not stored.
SparseMatrixD coparticipation_matrix(const Graph& g, const CliqueSet& cs);

/// Z = X * Y by sparse-sparse multiplication; exact for integer inputs.
SparseMatrixD vertex_community_matrix(const SparseMatrixD& x, const SparseMatrixD& y);

/// Per-column idf factor: gamma_l = log2(n / delta_l) where delta_l counts
/// the nonzeros of column l of Z. Columns with no nonzeros get gamma 0.
Eigen::VectorXd idf_vector(const SparseMatrixD& z);

/// The column nonzero counts of Z computed from X alone: column l is
/// supported on the union of the X-rows of clique l's members (all stored
/// values are positive, so no cancellation occurs in X * Y).
Eigen::VectorXd community_support_counts(const SparseMatrixD& x, const CliqueSet& cs);

/// idf factors straight from support counts, without materializing Z.
Eigen::VectorXd idf_from_support_counts(const Eigen::VectorXd& delta, int n);

/// Scales every stored value Z(i,l) by gamma_l.
SparseMatrixD apply_tfidf(const SparseMatrixD& z, const Eigen::VectorXd& gamma);

/// Scales each nonzero row to unit L2 norm; zero rows are recorded untouched.
Embedding normalize_rows(SparseMatrixD z);

struct EmbedResult {
    Embedding embedding;
    CliqueSet cliques;
    SparseMatrixD x;  // co-participation matrix, kept for the clustering stage
    std::map<std::string, double> phase_seconds;  // cliques, matrices, tfidf
};

/// Full pipeline: cliques -> Y, X, Z -> idf -> weighting -> normalization.
/// When every clique column is dense (gamma identically zero, e.g. the graph
/// is a single clique) the weighting step is skipped so rows stay normalizable.
EmbedResult embed(const Graph& g, std::size_t max_cliques = 0);

/// Coordinate-triplet text export: header "n d nnz", then "row col value"
/// lines; rows use compact ids, with original ids in a sidecar mapping.
void write_embedding(const Embedding& e, std::ostream& out);
void write_vertex_mapping(const Graph& g, std::ostream& out);

}  // namespace cliquepart
