#include "cliquepart/embedding.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ostream>

namespace cliquepart {

namespace {

using CscMatrix = Eigen::SparseMatrix<double>;  // column-major workhorse

SparseMatrixD from_csc_arrays(int rows, int cols, std::vector<int>& outer,
                              std::vector<int>& inner, std::vector<double>& vals) {
    Eigen::Map<const CscMatrix> map(rows, cols, static_cast<Eigen::Index>(inner.size()),
                                    outer.data(), inner.data(), vals.data());
    return SparseMatrixD(map);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SparseMatrixD incidence_matrix(const Graph& g, const CliqueSet& cs) {
    for (const auto& c : cs.cliques) {
        for (int v : c) {
            if (v < 0 || v >= g.n)
                throw std::invalid_argument("clique vertex outside graph");
        }
    }
    const int d = static_cast<int>(cs.size());
    std::vector<int> outer(d + 1, 0);
    std::vector<int> inner;
    std::vector<double> vals;
    std::size_t nnz = 0;
    for (const auto& c : cs.cliques) nnz += c.size();
    inner.reserve(nnz);
    vals.reserve(nnz);
    for (int l = 0; l < d; ++l) {
        for (int v : cs.cliques[l]) {
            inner.push_back(v);
            vals.push_back(1.0);
        }
        outer[l + 1] = static_cast<int>(inner.size());
    }
    return from_csc_arrays(g.n, d, outer, inner, vals);
}

SparseMatrixD coparticipation_matrix(const Graph& g, const CliqueSet& cs) {
    const int n = g.n;
    SparseMatrixD x(n, n);
    if (n <= 4096) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t l = 0; l < cs.size(); ++l) {
            const double w = static_cast<double>(cs.weights[l]);
            if (w == 0.0) continue;
            const auto& c = cs.cliques[l];
            for (int i : c)
                for (int j : c) acc(i, j) += w;
        }
        x = acc.sparseView();
    } else {
        std::vector<Eigen::Triplet<double>> trips;
        for (std::size_t l = 0; l < cs.size(); ++l) {
            const double w = static_cast<double>(cs.weights[l]);
            if (w == 0.0) continue;
            const auto& c = cs.cliques[l];
            for (int i : c)
                for (int j : c) trips.emplace_back(i, j, w);
        }
        x.setFromTriplets(trips.begin(), trips.end());
    }
    x.makeCompressed();
    return x;
}

SparseMatrixD vertex_community_matrix(const SparseMatrixD& x, const SparseMatrixD& y) {
    if (x.rows() != x.cols() || x.cols() != y.rows())
        throw std::invalid_argument("dimension mismatch in Z = X * Y");
    const int n = static_cast<int>(x.rows());
    const int d = static_cast<int>(y.cols());
    CscMatrix xc = x;
    CscMatrix yc = y;

    // Column-at-a-time product with a dense accumulator; columns of Y are
    // short (clique members), columns of X are reused across cliques.
    std::vector<int> outer(d + 1, 0);
    std::vector<int> inner;
    std::vector<double> vals;
    std::vector<double> acc(n, 0.0);
    std::vector<int> touched;
    for (int l = 0; l < d; ++l) {
        touched.clear();
        for (CscMatrix::InnerIterator yit(yc, l); yit; ++yit) {
            const double yv = yit.value();
            for (CscMatrix::InnerIterator xit(xc, static_cast<int>(yit.row())); xit;
                 ++xit) {
                const int i = static_cast<int>(xit.row());
                if (acc[i] == 0.0) touched.push_back(i);
                acc[i] += xit.value() * yv;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int i : touched) {
            if (acc[i] != 0.0) {
                inner.push_back(i);
                vals.push_back(acc[i]);
            }
            acc[i] = 0.0;
        }
        outer[l + 1] = static_cast<int>(inner.size());
    }
    return from_csc_arrays(n, d, outer, inner, vals);
}

Eigen::VectorXd idf_vector(const SparseMatrixD& z) {
    if (z.rows() == 0 || z.cols() == 0)
        throw std::invalid_argument("idf of an empty matrix");
    const double n = static_cast<double>(z.rows());
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(z.cols());
    for (int r = 0; r < z.outerSize(); ++r) {
        for (SparseMatrixD::InnerIterator it(z, r); it; ++it) {
            if (it.value() != 0.0) delta(it.col()) += 1.0;
        }
    }
    Eigen::VectorXd gamma(z.cols());
    for (Eigen::Index l = 0; l < gamma.size(); ++l) {
        gamma(l) = delta(l) > 0.0 ? std::log2(n / delta(l)) : 0.0;
    }
    return gamma;
}

Eigen::VectorXd community_support_counts(const SparseMatrixD& x, const CliqueSet& cs) {
    const int n = static_cast<int>(x.rows());
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> row_bits(static_cast<std::size_t>(n) * words, 0);
    for (int r = 0; r < x.outerSize(); ++r) {
        auto* bits = row_bits.data() + static_cast<std::size_t>(r) * words;
        for (SparseMatrixD::InnerIterator it(x, r); it; ++it) {
            const int c = static_cast<int>(it.col());
            bits[c >> 6] |= std::uint64_t{1} << (c & 63);
        }
    }
    std::vector<std::uint64_t> acc(words);
    Eigen::VectorXd delta(static_cast<Eigen::Index>(cs.size()));
    for (std::size_t l = 0; l < cs.size(); ++l) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int v : cs.cliques[l]) {
            const auto* bits = row_bits.data() + static_cast<std::size_t>(v) * words;
            for (int w = 0; w < words; ++w) acc[w] |= bits[w];
        }
        std::int64_t count = 0;
        for (int w = 0; w < words; ++w) count += std::popcount(acc[w]);
        delta(static_cast<Eigen::Index>(l)) = static_cast<double>(count);
    }
    return delta;
}

Eigen::VectorXd idf_from_support_counts(const Eigen::VectorXd& delta, int n) {
    Eigen::VectorXd gamma(delta.size());
    for (Eigen::Index l = 0; l < delta.size(); ++l) {
        gamma(l) = delta(l) > 0.0 ? std::log2(static_cast<double>(n) / delta(l)) : 0.0;
    }
    return gamma;
}

SparseMatrixD apply_tfidf(const SparseMatrixD& z, const Eigen::VectorXd& gamma) {
    if (gamma.size() != z.cols())
        throw std::invalid_argument("idf vector length does not match columns");
    SparseMatrixD out = z;
    for (int r = 0; r < out.outerSize(); ++r) {
        for (SparseMatrixD::InnerIterator it(out, r); it; ++it) {
            it.valueRef() *= gamma(it.col());
        }
    }
    return out;
}

Embedding normalize_rows(SparseMatrixD z) {
    Embedding e;
    for (int r = 0; r < z.outerSize(); ++r) {
        double sq = 0.0;
        for (SparseMatrixD::InnerIterator it(z, r); it; ++it)
            sq += it.value() * it.value();
        if (sq == 0.0) {
            e.zero_rows.push_back(r);
            continue;
        }
        const double inv = 1.0 / std::sqrt(sq);
        for (SparseMatrixD::InnerIterator it(z, r); it; ++it) it.valueRef() *= inv;
    }
    e.z = std::move(z);
    return e;
}

EmbedResult embed(const Graph& g, std::size_t max_cliques) {
    EmbedResult res;
    auto t0 = std::chrono::steady_clock::now();
    res.cliques = enumerate_maximal_cliques(g, max_cliques);
    res.phase_seconds["cliques"] = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    SparseMatrixD y = incidence_matrix(g, res.cliques);
    res.x = coparticipation_matrix(g, res.cliques);
    SparseMatrixD z = vertex_community_matrix(res.x, y);
    res.phase_seconds["matrices"] = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    Eigen::VectorXd gamma = idf_vector(z);
    // All columns dense means every weight vanishes; keep the raw profile
    // so rows remain normalizable.
    if (gamma.size() > 0 && gamma.maxCoeff() > 0.0) z = apply_tfidf(z, gamma);
    res.embedding = normalize_rows(std::move(z));
    res.embedding.gamma = std::move(gamma);
    res.phase_seconds["tfidf"] = seconds_since(t0);
    return res;
}

void write_embedding(const Embedding& e, std::ostream& out) {
    out.precision(17);
    out << e.z.rows() << ' ' << e.z.cols() << ' ' << e.z.nonZeros() << '\n';
    for (int r = 0; r < e.z.outerSize(); ++r) {
        for (SparseMatrixD::InnerIterator it(e.z, r); it; ++it) {
            out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
        }
    }
}

void write_vertex_mapping(const Graph& g, std::ostream& out) {
    for (int v = 0; v < g.n; ++v) out << v << ' ' << g.labels[v] << '\n';
}

}  // namespace cliquepart
