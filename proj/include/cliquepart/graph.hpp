#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cliquepart {

/// Simple undirected graph over compact vertex ids 0..n-1.
/// Adjacency lists are sorted, symmetric, and free of loops and duplicates.
struct Graph {
    int n = 0;
    std::int64_t m = 0;
    std::vector<std::vector<int>> adj;
    /// labels[v] is the vertex id carried by v in the original input.
    std::vector<std::int64_t> labels;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;
};

/// Bijection between original vertex ids and compact ids.
struct VertexMap {
    std::unordered_map<std::int64_t, int> forward;
    std::vector<std::int64_t> backward;
};

struct DegreeStats {
    int min = 0;
    int max = 0;
    double mean = 0.0;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds a Graph from loop-free edges over compact ids; duplicates are collapsed.
Graph build_graph(int n, std::vector<std::pair<int, int>> edges,
                  std::vector<std::int64_t> labels = {});

/// Parses an edge list ("u v" per line, '#'/'%' comments), simplifies it
/// (loops and duplicate/reversed edges dropped) and compacts vertex ids
/// to 0..n-1 ordered by original id.
std::pair<Graph, VertexMap> parse_edge_list(std::istream& in);
std::pair<Graph, VertexMap> parse_edge_list_file(const std::string& path);

/// Writes the graph back out as "u v" lines using original labels.
void write_edge_list(const Graph& g, std::ostream& out);

/// Connected components as vertex lists, each sorted ascending.
std::vector<std::vector<int>> connected_components(const Graph& g);

/// Induced subgraph on the largest component; ties go to the component
/// containing the smallest original id. The returned VertexMap relates
/// original labels to the new compact ids.
std::pair<Graph, VertexMap> giant_component(const Graph& g);

DegreeStats degree_stats(const Graph& g);

}  // namespace cliquepart
