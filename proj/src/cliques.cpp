#include "cliquepart/cliques.hpp"

#include <algorithm>
#include <ostream>

namespace cliquepart {

namespace {

/// Order by repeated minimum-degree removal (bucket queue).
std::vector<int> degeneracy_order(const Graph& g) {
    int n = g.n;
    std::vector<int> deg(n), pos(n), order;
    order.reserve(n);
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        maxdeg = std::max(maxdeg, deg[v]);
    }
    std::vector<std::vector<int>> buckets(maxdeg + 1);
    std::vector<int> bucket_of(n);
    for (int v = 0; v < n; ++v) {
        buckets[deg[v]].push_back(v);
        pos[v] = static_cast<int>(buckets[deg[v]].size()) - 1;
        bucket_of[v] = deg[v];
    }
    std::vector<char> removed(n, 0);
    int cur = 0;
    for (int iter = 0; iter < n; ++iter) {
        while (buckets[cur].empty()) ++cur;
        int v = buckets[cur].back();
        buckets[cur].pop_back();
        removed[v] = 1;
        order.push_back(v);
        for (int w : g.adj[v]) {
            if (removed[w]) continue;
            int b = bucket_of[w];
            // Swap-remove w from its bucket.
            int p = pos[w];
            buckets[b][p] = buckets[b].back();
            pos[buckets[b][p]] = p;
            buckets[b].pop_back();
            bucket_of[w] = b - 1;
            buckets[b - 1].push_back(w);
            pos[w] = static_cast<int>(buckets[b - 1].size()) - 1;
        }
        cur = std::max(cur - 1, 0);
    }
    return order;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

struct Enumerator {
    const Graph& g;
    std::size_t budget;  // 0 = unbounded
    std::vector<std::vector<int>>& out;
    std::vector<int> r;

    void report() {
        if (budget && out.size() >= budget)
            throw CliqueBudgetExceeded("clique budget exceeded");
        std::vector<int> c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }

    std::size_t common_with(int u, const std::vector<int>& p) const {
        std::size_t cnt = 0;
        const auto& nu = g.adj[u];
        auto it = nu.begin();
        for (int x : p) {
            it = std::lower_bound(it, nu.end(), x);
            if (it == nu.end()) break;
            if (*it == x) ++cnt;
        }
        return cnt;
    }

    void expand(std::vector<int> p, std::vector<int> x) {
        if (p.empty() && x.empty()) {
            report();
            return;
        }
        // Pivot: vertex of P union X covering most of P.
        int pivot = -1;
        std::size_t best = 0;
        bool first = true;
        for (const auto* side : {&p, &x}) {
            for (int u : *side) {
                std::size_t c = common_with(u, p);
                if (first || c > best) {
                    best = c;
                    pivot = u;
                    first = false;
                }
            }
        }
        std::vector<int> candidates;
        std::set_difference(p.begin(), p.end(), g.adj[pivot].begin(),
                            g.adj[pivot].end(), std::back_inserter(candidates));
        for (int v : candidates) {
            const auto& nv = g.adj[v];
            r.push_back(v);
            expand(intersect(p, nv), intersect(x, nv));
            r.pop_back();
            p.erase(std::lower_bound(p.begin(), p.end(), v));
            auto it = std::lower_bound(x.begin(), x.end(), v);
            x.insert(it, v);
        }
    }
};

}  // namespace

CliqueSet enumerate_maximal_cliques(const Graph& g, std::size_t max_cliques) {
    std::vector<std::vector<int>> found;
    Enumerator en{g, max_cliques, found, {}};
    auto order = degeneracy_order(g);
    std::vector<int> rank(g.n);
    for (int i = 0; i < g.n; ++i) rank[order[i]] = i;
    for (int v : order) {
        std::vector<int> p, x;
        for (int w : g.adj[v]) (rank[w] > rank[v] ? p : x).push_back(w);
        std::sort(p.begin(), p.end());
        std::sort(x.begin(), x.end());
        en.r.assign(1, v);
        en.expand(std::move(p), std::move(x));
    }
    std::sort(found.begin(), found.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    CliqueSet cs;
    cs.cliques = std::move(found);
    cs.weights.reserve(cs.cliques.size());
    for (const auto& c : cs.cliques) {
        auto s = static_cast<std::int64_t>(c.size());
        cs.weights.push_back(s * (s - 1) / 2);
    }
    return cs;
}

std::map<int, std::int64_t> clique_size_distribution(const CliqueSet& cs) {
    std::map<int, std::int64_t> hist;
    for (const auto& c : cs.cliques) ++hist[static_cast<int>(c.size())];
    return hist;
}

void write_clique_dump(const CliqueSet& cs, const Graph& g, std::ostream& out) {
    out << "d=" << cs.size() << '\n';
    for (const auto& c : cs.cliques) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out << ' ';
            out << g.labels[c[i]];
        }
        out << '\n';
    }
}

}  // namespace cliquepart
