#include "cliquepart/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cliquepart {

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

Graph build_graph(int n, std::vector<std::pair<int, int>> edges,
                  std::vector<std::int64_t> labels) {
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    if (labels.empty()) {
        labels.resize(n);
        for (int v = 0; v < n; ++v) labels[v] = v;
    }
    g.labels = std::move(labels);
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& [u, v] : edges) {
        if (u == v) continue;
        if (u < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
        ++g.m;
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

std::pair<Graph, VertexMap> parse_edge_list(std::istream& in) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::string line;
    std::size_t lineno = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == '%') continue;
        std::istringstream ls(line);
        std::int64_t u, v;
        if (!(ls >> u >> v) || u < 0 || v < 0) {
            throw ParseError("malformed edge at line " + std::to_string(lineno) +
                             ": '" + line + "'");
        }
        std::string rest;
        if (ls >> rest) {
            throw ParseError("trailing tokens at line " + std::to_string(lineno) +
                             ": '" + line + "'");
        }
        saw_data = true;
        raw.emplace_back(u, v);
    }
    if (!saw_data) throw ParseError("empty edge list");

    // Compact ids in sorted original-id order.
    std::map<std::int64_t, int> ids;
    for (const auto& [u, v] : raw) {
        ids.emplace(u, 0);
        ids.emplace(v, 0);
    }
    VertexMap vm;
    vm.backward.reserve(ids.size());
    int next = 0;
    for (auto& [orig, compact] : ids) {
        compact = next++;
        vm.backward.push_back(orig);
        vm.forward.emplace(orig, compact);
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(raw.size());
    for (const auto& [u, v] : raw) edges.emplace_back(ids[u], ids[v]);
    Graph g = build_graph(static_cast<int>(ids.size()), std::move(edges), vm.backward);
    return {std::move(g), std::move(vm)};
}

std::pair<Graph, VertexMap> parse_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (int u = 0; u < g.n; ++u) {
        for (int v : g.adj[u]) {
            if (u < v) out << g.labels[u] << ' ' << g.labels[v] << '\n';
        }
    }
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> comp(g.n, -1);
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            out[id].push_back(u);
            for (int v : g.adj[u]) {
                if (comp[v] < 0) {
                    comp[v] = id;
                    stack.push_back(v);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

std::pair<Graph, VertexMap> giant_component(const Graph& g) {
    auto comps = connected_components(g);
    // Largest component; ties broken by the smallest original id it contains.
    const std::vector<int>* best = &comps.front();
    for (const auto& c : comps) {
        if (c.size() > best->size() ||
            (c.size() == best->size() &&
             g.labels[c.front()] < g.labels[best->front()])) {
            best = &c;
        }
    }
    VertexMap vm;
    std::vector<int> old_to_new(g.n, -1);
    vm.backward.reserve(best->size());
    for (std::size_t i = 0; i < best->size(); ++i) {
        int old = (*best)[i];
        old_to_new[old] = static_cast<int>(i);
        vm.backward.push_back(g.labels[old]);
        vm.forward.emplace(g.labels[old], static_cast<int>(i));
    }
    std::vector<std::pair<int, int>> edges;
    for (int old : *best) {
        for (int w : g.adj[old]) {
            if (old < w) edges.emplace_back(old_to_new[old], old_to_new[w]);
        }
    }
    Graph sub = build_graph(static_cast<int>(best->size()), std::move(edges), vm.backward);
    return {std::move(sub), std::move(vm)};
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats s;
    if (g.n == 0) return s;
    s.min = g.degree(0);
    s.max = g.degree(0);
    for (int v = 1; v < g.n; ++v) {
        s.min = std::min(s.min, g.degree(v));
        s.max = std::max(s.max, g.degree(v));
    }
    s.mean = 2.0 * static_cast<double>(g.m) / g.n;
    return s;
}

}  // namespace cliquepart
