#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <vector>

#include "cliquepart/graph.hpp"

namespace cliquepart {

/// All maximal cliques of a graph in canonical order (size descending,
/// then lexicographic). Isolated vertices appear as size-1 cliques.
struct CliqueSet {
    std::vector<std::vector<int>> cliques;  // each sorted ascending
    std::vector<std::int64_t> weights;      // w = s*(s-1)/2, edges of the clique

    std::size_t size() const { return cliques.size(); }
};

class CliqueBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bron-Kerbosch with pivoting over a degeneracy-ordered outer loop.
/// `max_cliques` = 0 means unbounded; otherwise exceeding it throws
/// CliqueBudgetExceeded.
CliqueSet enumerate_maximal_cliques(const Graph& g, std::size_t max_cliques = 0);

/// Histogram clique size -> count; counts sum to the clique count.
std::map<int, std::int64_t> clique_size_distribution(const CliqueSet& cs);

/// Header "d=<count>", then one clique per line in original vertex ids.
void write_clique_dump(const CliqueSet& cs, const Graph& g, std::ostream& out);

}  // namespace cliquepart
