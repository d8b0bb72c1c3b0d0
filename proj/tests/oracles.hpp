// Independent reference implementations used only by tests.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cliquepart/clustering.hpp"
#include "cliquepart/graph.hpp"

namespace oracles {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Erdos-Renyi G(n, p), deterministic per seed.
inline cliquepart::Graph random_graph(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uniform01(rng) < p) edges.emplace_back(i, j);
    return cliquepart::build_graph(n, std::move(edges));
}

inline cliquepart::Partition random_partition(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> a(n);
    for (int v = 0; v < n; ++v) a[v] = static_cast<int>(rng() % k);
    return cliquepart::Partition::from_assignment(std::move(a));
}

/// All maximal cliques by testing every vertex subset; n <= ~20 only.
inline std::vector<std::vector<int>> brute_force_maximal_cliques(
    const cliquepart::Graph& g) {
    const int n = g.n;
    auto is_clique = [&](unsigned mask) {
        for (int i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            for (int j = i + 1; j < n; ++j) {
                if ((mask >> j & 1u) && !g.has_edge(i, j)) return false;
            }
        }
        return true;
    };
    std::vector<unsigned> cliques_mask;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (is_clique(mask)) cliques_mask.push_back(mask);
    }
    std::vector<std::vector<int>> out;
    for (unsigned m1 : cliques_mask) {
        bool maximal = true;
        for (unsigned m2 : cliques_mask) {
            if (m1 != m2 && (m1 & m2) == m1) {
                maximal = false;
                break;
            }
        }
        if (!maximal) continue;
        std::vector<int> c;
        for (int i = 0; i < n; ++i)
            if (m1 >> i & 1u) c.push_back(i);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    return out;
}

/// Literal ordered-pair double sum of the modularity definition.
inline double modularity_bruteforce(const cliquepart::Graph& g,
                                    const cliquepart::Partition& p) {
    const double two_m = 2.0 * static_cast<double>(g.m);
    double q = 0.0;
    for (int u = 0; u < g.n; ++u) {
        for (int v = 0; v < g.n; ++v) {
            if (p.assignment[u] != p.assignment[v]) continue;
            const double a_uv = g.has_edge(u, v) ? 1.0 : 0.0;
            q += a_uv - g.degree(u) * static_cast<double>(g.degree(v)) / two_m;
        }
    }
    return q / two_m;
}

/// The 7-vertex two-community example: triangles {0,1,2} and {1,2,3} glued
/// on an edge, and a disjoint triangle {4,5,6}.
inline cliquepart::Graph example_graph() {
    return cliquepart::build_graph(
        7, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
}

inline cliquepart::Partition example_two_blocks() {
    return cliquepart::Partition::from_assignment({0, 0, 0, 0, 1, 1, 1});
}

}  // namespace oracles
