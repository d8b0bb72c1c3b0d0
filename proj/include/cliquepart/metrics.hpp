#pragma once

#include <map>
#include <optional>
#include <string>

#include "cliquepart/clustering.hpp"
#include "cliquepart/graph.hpp"

namespace cliquepart {

struct MetricsReport {
    std::string dataset;
    std::string algorithm;
    int k = 0;
    double modularity = 0.0;
    double permanence = 0.0;
    std::optional<double> nmi;
    std::uint64_t seed = 0;
    std::map<std::string, double> per_phase_seconds;

    double seconds_total() const;
    /// Flat JSON object with fixed key order.
    std::string to_json(bool include_timings = true) const;
    static std::string csv_header(bool include_timings = true);
    std::string csv_row(bool include_timings = true) const;
};

/// Newman modularity over ordered vertex pairs within blocks (u = v included).
double modularity(const Graph& g, const Partition& p);

/// Edges among the in-block neighbors of v over the possible pairs; 0 when
/// fewer than two in-block neighbors.
double internal_clustering_coefficient(const Graph& g, const Partition& p, int v);

/// P(v) = (I(v) / max{1, E_max(v)}) / deg(v) - (1 - c_in(v)); 0 for
/// isolated vertices.
double permanence_vertex(const Graph& g, const Partition& p, int v);

/// Mean of permanence_vertex over all vertices.
double permanence(const Graph& g, const Partition& p);

/// Normalized mutual information 2 I(a;b) / (H(a) + H(b)), natural logs;
/// 1 when both partitions are the same single block.
double nmi(const Partition& a, const Partition& b);

}  // namespace cliquepart
