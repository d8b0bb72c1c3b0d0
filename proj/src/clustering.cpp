#include "cliquepart/clustering.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cliquepart/metrics.hpp"

namespace cliquepart {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(k);
    for (std::size_t v = 0; v < assignment.size(); ++v)
        out[assignment[v]].push_back(static_cast<int>(v));
    return out;
}

Partition Partition::from_assignment(std::vector<int> assignment) {
    // Renumber blocks by first (smallest) vertex occurrence.
    std::map<int, int> remap;
    for (int a : assignment) {
        if (!remap.count(a)) {
            int next = static_cast<int>(remap.size());
            remap.emplace(a, next);
        }
    }
    Partition p;
    p.k = static_cast<int>(remap.size());
    p.assignment = std::move(assignment);
    for (int& a : p.assignment) a = remap.at(a);
    return p;
}

std::vector<int> active_vertices(const Embedding& e) {
    std::vector<int> out;
    out.reserve(e.z.rows());
    std::size_t zi = 0;
    for (int v = 0; v < e.z.rows(); ++v) {
        if (zi < e.zero_rows.size() && e.zero_rows[zi] == v) {
            ++zi;
            continue;
        }
        out.push_back(v);
    }
    return out;
}

Eigen::MatrixXd cosine_distance_matrix(const Embedding& e,
                                       std::size_t memory_budget_bytes) {
    const auto active = active_vertices(e);
    const std::size_t na = active.size();
    if (na * na * sizeof(double) > memory_budget_bytes) {
        throw std::runtime_error(
            "distance matrix exceeds the memory budget; use the k-means path");
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Ones(na, na);
    // Accumulate pairwise dot products column-by-column of Z^T.
    Eigen::SparseMatrix<double> zc(e.z.rows(), e.z.cols());
    {
        std::vector<int> row_of(e.z.rows(), -1);
        for (std::size_t i = 0; i < na; ++i) row_of[active[i]] = static_cast<int>(i);
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(e.z.nonZeros());
        for (int r = 0; r < e.z.outerSize(); ++r) {
            if (row_of[r] < 0) continue;
            for (SparseMatrixD::InnerIterator it(e.z, r); it; ++it)
                trips.emplace_back(row_of[r], static_cast<int>(it.col()), it.value());
        }
        zc.resize(static_cast<Eigen::Index>(na), e.z.cols());
        zc.setFromTriplets(trips.begin(), trips.end());
    }
    std::vector<int> idx;
    std::vector<double> val;
    for (int l = 0; l < zc.outerSize(); ++l) {
        idx.clear();
        val.clear();
        for (Eigen::SparseMatrix<double>::InnerIterator it(zc, l); it; ++it) {
            idx.push_back(static_cast<int>(it.row()));
            val.push_back(it.value());
        }
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                d(idx[a], idx[b]) -= val[a] * val[b];
    }
    for (std::size_t i = 0; i < na; ++i) d(i, i) = 0.0;
    d = d.cwiseMax(0.0).cwiseMin(2.0);
    return d;
}

Eigen::MatrixXd cosine_distance_via_coparticipation(const SparseMatrixD& x,
                                                    const CliqueSet& cs,
                                                    const Eigen::VectorXd& gamma,
                                                    const std::vector<int>& active) {
    const int n = static_cast<int>(x.rows());
    const bool weight = gamma.size() > 0 && gamma.maxCoeff() > 0.0;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t l = 0; l < cs.size(); ++l) {
        const double g2 = weight ? gamma(static_cast<Eigen::Index>(l)) *
                                       gamma(static_cast<Eigen::Index>(l))
                                 : 1.0;
        if (g2 == 0.0) continue;
        const auto& c = cs.cliques[l];
        for (int i : c) {
            auto row = w.col(i);  // symmetric, column access is contiguous
            for (int j : c) row(j) += g2;
        }
    }
    Eigen::MatrixXd xd = Eigen::MatrixXd(x);
    Eigen::MatrixXd gram = xd * w * xd;
    const std::size_t na = active.size();
    Eigen::MatrixXd d(na, na);
    for (std::size_t i = 0; i < na; ++i) {
        const double gi = gram(active[i], active[i]);
        for (std::size_t j = 0; j < na; ++j) {
            const double gj = gram(active[j], active[j]);
            d(i, j) = 1.0 - gram(active[i], active[j]) / std::sqrt(gi * gj);
        }
        d(i, i) = 0.0;
    }
    d = d.cwiseMax(0.0).cwiseMin(2.0);
    return d;
}

Eigen::MatrixXd pipeline_distance_matrix(const EmbedResult& er,
                                         std::size_t memory_budget_bytes) {
    const Embedding& e = er.embedding;
    const int n = static_cast<int>(e.z.rows());
    // Direct route cost: sum over clique columns of (nonzeros per column)^2.
    std::vector<double> col_nnz(e.z.cols(), 0.0);
    for (int r = 0; r < e.z.outerSize(); ++r)
        for (SparseMatrixD::InnerIterator it(e.z, r); it; ++it)
            if (it.value() != 0.0) col_nnz[it.col()] += 1.0;
    double direct_cost = 0.0;
    for (double c : col_nnz) direct_cost += c * c;
    // Fused route cost: clique pair sums plus two dense n^3 products.
    double fused_cost = 2.0 * std::pow(static_cast<double>(n), 3);
    for (const auto& c : er.cliques.cliques)
        fused_cost += static_cast<double>(c.size()) * static_cast<double>(c.size());
    const bool fused_fits =
        3 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n) *
            sizeof(double) <=
        memory_budget_bytes;
    if (fused_fits && fused_cost < direct_cost) {
        return cosine_distance_via_coparticipation(er.x, er.cliques, e.gamma,
                                                   active_vertices(e));
    }
    return cosine_distance_matrix(e, memory_budget_bytes);
}

DistanceBuild build_distance_matrix(const Graph& g, std::size_t max_cliques,
                                    std::size_t memory_budget_bytes) {
    const auto seconds_since = [](std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    DistanceBuild out;
    auto t0 = std::chrono::steady_clock::now();
    CliqueSet cs = enumerate_maximal_cliques(g, max_cliques);
    out.phase_seconds["cliques"] = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    SparseMatrixD x = coparticipation_matrix(g, cs);
    Eigen::VectorXd delta = community_support_counts(x, cs);
    out.phase_seconds["matrices"] = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    Eigen::VectorXd gamma = idf_from_support_counts(delta, g.n);
    out.phase_seconds["tfidf"] = seconds_since(t0);

    double direct_cost = 0.0;
    for (Eigen::Index l = 0; l < delta.size(); ++l) direct_cost += delta(l) * delta(l);
    double fused_cost = 2.0 * std::pow(static_cast<double>(g.n), 3);
    for (const auto& c : cs.cliques)
        fused_cost += static_cast<double>(c.size()) * static_cast<double>(c.size());
    const bool fused_fits =
        3 * static_cast<std::size_t>(g.n) * static_cast<std::size_t>(g.n) *
            sizeof(double) <=
        memory_budget_bytes;
    if (fused_fits && fused_cost < direct_cost) {
        for (int v = 0; v < g.n; ++v) {
            SparseMatrixD::InnerIterator it(x, v);
            if (it) out.active.push_back(v);  // empty X row <=> empty Z row
        }
        out.d = cosine_distance_via_coparticipation(x, cs, gamma, out.active);
        return out;
    }

    t0 = std::chrono::steady_clock::now();
    SparseMatrixD z = vertex_community_matrix(x, incidence_matrix(g, cs));
    out.phase_seconds["matrices"] += seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    if (gamma.size() > 0 && gamma.maxCoeff() > 0.0) z = apply_tfidf(z, gamma);
    Embedding e = normalize_rows(std::move(z));
    out.phase_seconds["tfidf"] += seconds_since(t0);
    out.active = active_vertices(e);
    out.d = cosine_distance_matrix(e, memory_budget_bytes);
    return out;
}

void write_partition(const Partition& p, const Graph& g, std::ostream& out) {
    for (int v = 0; v < g.n; ++v) out << g.labels[v] << ' ' << p.assignment[v] << '\n';
}

Dendrogram agglomerative_hierarchy(Eigen::MatrixXd distances) {
    const int n = static_cast<int>(distances.rows());
    Dendrogram dg;
    dg.leaves = n;
    if (n <= 1) return dg;

    struct RawMerge {
        int x, y;
        double dist;
    };
    std::vector<RawMerge> raw;
    raw.reserve(n - 1);
    std::vector<double> size(n, 1.0);
    std::vector<char> active(n, 1);
    std::vector<int> chain;
    chain.reserve(n);
    int remaining = n;
    while (remaining > 1) {
        if (chain.empty()) {
            for (int i = 0; i < n; ++i) {
                if (active[i]) {
                    chain.push_back(i);
                    break;
                }
            }
        }
        for (;;) {
            const int x = chain.back();
            const int prev = chain.size() >= 2 ? chain[chain.size() - 2] : -1;
            int y = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                if (!active[i] || i == x) continue;
                const double dxi = distances(x, i);
                if (dxi < best) {
                    best = dxi;
                    y = i;
                }
            }
            if (prev >= 0 && distances(x, prev) == best) y = prev;
            if (y == prev) {
                // Reciprocal nearest neighbors: merge x and prev.
                chain.pop_back();
                chain.pop_back();
                const int a = std::min(x, y), b = std::max(x, y);
                raw.push_back({a, b, best});
                const double sa = size[a], sb = size[b];
                for (int i = 0; i < n; ++i) {
                    if (!active[i] || i == a || i == b) continue;
                    const double nd =
                        (sa * distances(a, i) + sb * distances(b, i)) / (sa + sb);
                    distances(a, i) = nd;
                    distances(i, a) = nd;
                }
                size[a] = sa + sb;
                active[b] = 0;
                --remaining;
                break;
            }
            chain.push_back(y);
        }
    }
    // Chain order may interleave branches; average linkage is monotone, so a
    // stable sort by height restores a valid merge sequence.
    std::stable_sort(raw.begin(), raw.end(),
                     [](const RawMerge& a, const RawMerge& b) { return a.dist < b.dist; });
    std::vector<int> label(n);
    for (int i = 0; i < n; ++i) label[i] = i;
    dg.merges.reserve(n - 1);
    for (int t = 0; t < n - 1; ++t) {
        DendrogramMerge m;
        int la = label[raw[t].x];
        int lb = label[raw[t].y];
        m.a = std::min(la, lb);
        m.b = std::max(la, lb);
        m.distance = raw[t].dist;
        m.id = n + t;
        label[raw[t].x] = m.id;  // x is the surviving representative
        dg.merges.push_back(m);
    }
    return dg;
}

Partition cut(const Dendrogram& dg, int k) {
    const int n = dg.leaves;
    if (k < 1 || k > n) throw std::invalid_argument("cut: k out of range");
    const int applied = n - k;
    std::vector<int> parent(n + applied, -1);
    for (int t = 0; t < applied; ++t) {
        parent[dg.merges[t].a] = dg.merges[t].id;
        parent[dg.merges[t].b] = dg.merges[t].id;
    }
    std::vector<int> root(n + applied, -1);
    std::vector<int> path;
    std::vector<int> assignment(n);
    for (int v = 0; v < n; ++v) {
        int u = v;
        path.clear();
        while (parent[u] != -1 && root[u] == -1) {
            path.push_back(u);
            u = parent[u];
        }
        const int r = root[u] == -1 ? u : root[u];
        root[v] = r;
        for (int p : path) root[p] = r;
        assignment[v] = r;
    }
    return Partition::from_assignment(std::move(assignment));
}

Partition expand_partition(const Partition& p, const std::vector<int>& leaf_vertices,
                           int n_total) {
    if (leaf_vertices.empty() && static_cast<int>(p.assignment.size()) == n_total)
        return Partition::from_assignment(p.assignment);
    std::vector<int> full(n_total, -1);
    for (std::size_t i = 0; i < leaf_vertices.size(); ++i)
        full[leaf_vertices[i]] = p.assignment[i];
    int next = p.k;
    for (int v = 0; v < n_total; ++v) {
        if (full[v] < 0) full[v] = next++;
    }
    return Partition::from_assignment(std::move(full));
}

Partition kmeans(const Embedding& e, int k, std::uint64_t seed) {
    const auto active = active_vertices(e);
    const int na = static_cast<int>(active.size());
    if (k < 1 || k > na) throw std::invalid_argument("kmeans: k out of range");
    const Eigen::Index d = e.z.cols();

    auto row_dot_centroid = [&](int v, const Eigen::VectorXd& c) {
        double s = 0.0;
        for (SparseMatrixD::InnerIterator it(e.z, v); it; ++it)
            s += it.value() * c(it.col());
        return s;
    };
    // Rows are unit vectors: ||p - c||^2 = 1 - 2<p,c> + ||c||^2.
    auto dist2 = [&](int v, const Eigen::VectorXd& c, double cnorm2) {
        return std::max(0.0, 1.0 - 2.0 * row_dot_centroid(v, c) + cnorm2);
    };

    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> centroids;
    centroids.reserve(k);
    // k-means++ seeding.
    {
        const int first = static_cast<int>(uniform01(rng) * na) % na;
        centroids.emplace_back(Eigen::VectorXd::Zero(d));
        for (SparseMatrixD::InnerIterator it(e.z, active[first]); it; ++it)
            centroids.back()(it.col()) = it.value();
        std::vector<double> best_d2(na, std::numeric_limits<double>::infinity());
        while (static_cast<int>(centroids.size()) < k) {
            const auto& c = centroids.back();
            const double cn2 = c.squaredNorm();
            double total = 0.0;
            for (int i = 0; i < na; ++i) {
                best_d2[i] = std::min(best_d2[i], dist2(active[i], c, cn2));
                total += best_d2[i];
            }
            int pick = 0;
            if (total > 0.0) {
                const double target = uniform01(rng) * total;
                double run = 0.0;
                pick = na - 1;
                for (int i = 0; i < na; ++i) {
                    run += best_d2[i];
                    if (run >= target && best_d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            } else {
                pick = static_cast<int>(uniform01(rng) * na) % na;
            }
            centroids.emplace_back(Eigen::VectorXd::Zero(d));
            for (SparseMatrixD::InnerIterator it(e.z, active[pick]); it; ++it)
                centroids.back()(it.col()) = it.value();
        }
    }

    std::vector<int> assign(na, 0);
    std::vector<double> cnorm2(k);
    const int max_iters = 300;
    const double shift_tol = 1e-4;
    for (int iter = 0; iter < max_iters; ++iter) {
        for (int c = 0; c < k; ++c) cnorm2[c] = centroids[c].squaredNorm();
        for (int i = 0; i < na; ++i) {
            int bestc = 0;
            double bestd = dist2(active[i], centroids[0], cnorm2[0]);
            for (int c = 1; c < k; ++c) {
                const double dd = dist2(active[i], centroids[c], cnorm2[c]);
                if (dd < bestd) {
                    bestd = dd;
                    bestc = c;
                }
            }
            assign[i] = bestc;
        }
        std::vector<int> counts(k, 0);
        for (int a : assign) ++counts[a];
        // Repair empty clusters from the largest one.
        for (int c = 0; c < k; ++c) {
            while (counts[c] == 0) {
                int big = 0;
                for (int c2 = 1; c2 < k; ++c2)
                    if (counts[c2] > counts[big]) big = c2;
                int far_i = -1;
                double far_d = -1.0;
                const double bn2 = centroids[big].squaredNorm();
                for (int i = 0; i < na; ++i) {
                    if (assign[i] != big) continue;
                    const double dd = dist2(active[i], centroids[big], bn2);
                    if (dd > far_d) {
                        far_d = dd;
                        far_i = i;
                    }
                }
                assign[far_i] = c;
                --counts[big];
                ++counts[c];
            }
        }
        std::vector<Eigen::VectorXd> next(k, Eigen::VectorXd::Zero(d));
        for (int i = 0; i < na; ++i) {
            for (SparseMatrixD::InnerIterator it(e.z, active[i]); it; ++it)
                next[assign[i]](it.col()) += it.value();
        }
        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            next[c] /= static_cast<double>(counts[c]);
            shift = std::max(shift, (next[c] - centroids[c]).norm());
            centroids[c] = std::move(next[c]);
        }
        if (shift < shift_tol) break;
    }

    Partition over_active;
    over_active.assignment = std::move(assign);
    over_active.k = k;
    return expand_partition(over_active, active, static_cast<int>(e.z.rows()));
}

AutoKResult auto_k(const Dendrogram& dg, const Graph& g,
                   const std::vector<int>& leaf_vertices) {
    const int nl = dg.leaves;
    std::map<int, std::pair<Partition, double>> cache;
    auto probe = [&](int k) -> double {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second.second;
        Partition p = expand_partition(cut(dg, k), leaf_vertices, g.n);
        double q = modularity(g, p);
        cache.emplace(k, std::make_pair(std::move(p), q));
        return q;
    };

    if (nl < 2) {
        AutoKResult r;
        r.k = 1;
        Partition base;
        if (nl == 1) base = cut(dg, 1);
        r.partition = expand_partition(base, leaf_vertices, g.n);
        r.modularity = g.m > 0 ? modularity(g, r.partition) : 0.0;
        return r;
    }

    int lo = 2, hi = nl;
    while (hi - lo > 2) {
        const int m1 = lo + (hi - lo) / 3;
        const int m2 = hi - (hi - lo) / 3;
        if (probe(m1) < probe(m2))
            lo = m1 + 1;
        else
            hi = m2 - 1;
    }
    int best_k = lo;
    for (int k = lo; k <= hi; ++k)
        if (probe(k) > probe(best_k)) best_k = k;
    // The curve is only close to bitonic; sweep a small window around the
    // ternary optimum, and keep the trivial one-block cut as a candidate.
    const int wlo = std::max(1, best_k - 5);
    const int whi = std::min(nl, best_k + 5);
    probe(1);
    for (int k = wlo; k <= whi; ++k) probe(k);
    best_k = 1;
    for (const auto& [k, pq] : cache)
        if (pq.second > cache.at(best_k).second) best_k = k;

    AutoKResult r;
    r.k = best_k;
    r.partition = cache.at(best_k).first;
    r.modularity = cache.at(best_k).second;
    return r;
}

}  // namespace cliquepart
