#include "cliquepart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cliquepart {

namespace {

void check_cover(const Graph& g, const Partition& p) {
    if (static_cast<int>(p.assignment.size()) != g.n)
        throw std::invalid_argument("partition does not cover the vertex set");
    for (int a : p.assignment) {
        if (a < 0 || a >= p.k) throw std::invalid_argument("block id out of range");
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

double MetricsReport::seconds_total() const {
    double t = 0.0;
    for (const auto& [_, s] : per_phase_seconds) t += s;
    return t;
}

std::string MetricsReport::to_json(bool include_timings) const {
    std::ostringstream os;
    os.precision(12);
    os << "{\"dataset\":\"" << dataset << "\",\"algorithm\":\"" << algorithm
       << "\",\"k\":" << k << ",\"modularity\":" << modularity
       << ",\"permanence\":" << permanence << ",\"nmi\":";
    if (nmi)
        os << *nmi;
    else
        os << "null";
    os << ",\"seed\":" << seed;
    if (include_timings) {
        os << ",\"seconds_total\":" << seconds_total();
        for (const auto& [name, s] : per_phase_seconds)
            os << ",\"seconds_" << name << "\":" << s;
    }
    os << "}";
    return os.str();
}

std::string MetricsReport::csv_header(bool include_timings) {
    std::string h = "dataset,algorithm,k,modularity,permanence,nmi,seed";
    if (include_timings)
        h += ",seconds_total,seconds_parse,seconds_cliques,seconds_matrices,"
             "seconds_tfidf,seconds_clustering,seconds_auto-k,seconds_metrics";
    return h;
}

std::string MetricsReport::csv_row(bool include_timings) const {
    std::ostringstream os;
    os.precision(12);
    os << dataset << ',' << algorithm << ',' << k << ',' << fmt(modularity) << ','
       << fmt(permanence) << ',' << (nmi ? fmt(*nmi) : "") << ',' << seed;
    if (include_timings) {
        os << ',' << fmt(seconds_total());
        for (const char* phase : {"parse", "cliques", "matrices", "tfidf",
                                  "clustering", "auto-k", "metrics"}) {
            auto it = per_phase_seconds.find(phase);
            os << ',' << (it != per_phase_seconds.end() ? fmt(it->second) : "0");
        }
    }
    return os.str();
}

double modularity(const Graph& g, const Partition& p) {
    if (g.m == 0) throw std::invalid_argument("modularity undefined for m = 0");
    check_cover(g, p);
    const double two_m = 2.0 * static_cast<double>(g.m);
    std::vector<double> adj_sum(p.k, 0.0), deg_sum(p.k, 0.0);
    for (int u = 0; u < g.n; ++u) {
        const int b = p.assignment[u];
        deg_sum[b] += g.degree(u);
        for (int v : g.adj[u]) {
            if (p.assignment[v] == b) adj_sum[b] += 1.0;  // ordered pairs
        }
    }
    double q = 0.0;
    for (int b = 0; b < p.k; ++b) q += adj_sum[b] - deg_sum[b] * deg_sum[b] / two_m;
    return q / two_m;
}

double internal_clustering_coefficient(const Graph& g, const Partition& p, int v) {
    const int b = p.assignment[v];
    std::vector<int> in_block;
    for (int w : g.adj[v]) {
        if (p.assignment[w] == b) in_block.push_back(w);
    }
    const std::size_t t = in_block.size();
    if (t < 2) return 0.0;
    std::int64_t edges = 0;
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            if (g.has_edge(in_block[i], in_block[j])) ++edges;
    return static_cast<double>(edges) / (static_cast<double>(t) * (t - 1) / 2.0);
}

double permanence_vertex(const Graph& g, const Partition& p, int v) {
    const int deg = g.degree(v);
    if (deg == 0) return 0.0;
    const int b = p.assignment[v];
    std::int64_t internal = 0;
    std::map<int, std::int64_t> foreign;
    for (int w : g.adj[v]) {
        if (p.assignment[w] == b)
            ++internal;
        else
            ++foreign[p.assignment[w]];
    }
    std::int64_t e_max = 0;
    for (const auto& [_, c] : foreign) e_max = std::max(e_max, c);
    const double c_in = internal_clustering_coefficient(g, p, v);
    return (static_cast<double>(internal) / std::max<std::int64_t>(1, e_max)) / deg -
           (1.0 - c_in);
}

double permanence(const Graph& g, const Partition& p) {
    check_cover(g, p);
    double sum = 0.0;
    for (int v = 0; v < g.n; ++v) sum += permanence_vertex(g, p, v);
    return sum / g.n;
}

double nmi(const Partition& a, const Partition& b) {
    if (a.assignment.size() != b.assignment.size())
        throw std::invalid_argument("nmi: partitions cover different vertex sets");
    const double n = static_cast<double>(a.assignment.size());
    std::vector<double> ca(a.k, 0.0), cb(b.k, 0.0);
    std::map<std::pair<int, int>, double> joint;
    for (std::size_t v = 0; v < a.assignment.size(); ++v) {
        ca[a.assignment[v]] += 1.0;
        cb[b.assignment[v]] += 1.0;
        joint[{a.assignment[v], b.assignment[v]}] += 1.0;
    }
    auto entropy = [n](const std::vector<double>& c) {
        double h = 0.0;
        for (double x : c)
            if (x > 0.0) h -= (x / n) * std::log(x / n);
        return h;
    };
    const double ha = entropy(ca), hb = entropy(cb);
    double mi = 0.0;
    for (const auto& [ab, nij] : joint) {
        const double pij = nij / n;
        mi += pij * std::log(pij / ((ca[ab.first] / n) * (cb[ab.second] / n)));
    }
    if (ha + hb == 0.0) return 1.0;  // both trivial single blocks
    return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

}  // namespace cliquepart
