#include "twinsearch/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace twinsearch {

Hypergraph::Hypergraph(int n, std::vector<Hyperedge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("node count must be nonnegative");
    for (auto& e : edges_) std::sort(e.begin(), e.end());
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.size() < 2)
            throw std::invalid_argument("hyperedge of size " + std::to_string(e.size()) +
                                        " rejected; hyperedges need >= 2 nodes");
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] < 0 || e[j] >= n)
                throw std::invalid_argument("node index " + std::to_string(e[j]) +
                                            " out of range [0," + std::to_string(n) + ")");
            if (j > 0 && e[j] == e[j - 1])
                throw std::invalid_argument("node " + std::to_string(e[j]) +
                                            " repeated within a hyperedge");
        }
        if (i > 0 && e == edges_[i - 1])
            throw std::invalid_argument("repeated hyperedge; hypergraphs are simple");
    }
}

int Hypergraph::max_edge_size() const {
    std::size_t k = 0;
    for (const auto& e : edges_) k = std::max(k, e.size());
    return static_cast<int>(k);
}

void ProjectionMatrix::validate() const {
    if (n < 0 || w.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("projection matrix has wrong shape");
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (at(u, v) < 0) throw std::invalid_argument("projection entries must be >= 0");
            if (at(u, v) != at(v, u))
                throw std::invalid_argument("projection matrix must be symmetric");
        }
        if (diagonal_mode == DiagonalMode::WithoutDiagonal && at(u, u) != 0)
            throw std::invalid_argument("diagonal must be zero in WithoutDiagonal mode");
    }
}

ProjectionMatrix ProjectionMatrix::off_diagonal() const {
    ProjectionMatrix out = *this;
    out.diagonal_mode = DiagonalMode::WithoutDiagonal;
    for (int u = 0; u < n; ++u) out.at(u, u) = 0;
    return out;
}

std::vector<std::int64_t> ProjectionMatrix::diagonal() const {
    std::vector<std::int64_t> d(n);
    for (int u = 0; u < n; ++u) d[u] = at(u, u);
    return d;
}

int SizeDistribution::total() const {
    int t = 0;
    for (const auto& [k, c] : counts) t += c;
    return t;
}

int SizeDistribution::max_size() const {
    int k = 0;
    for (const auto& [size, c] : counts)
        if (c > 0) k = std::max(k, size);
    return k;
}

ProjectionMatrix project(const Hypergraph& h, DiagonalMode mode) {
    ProjectionMatrix w(h.node_count(), mode);
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (mode == DiagonalMode::WithDiagonal) w.at(e[i], e[i]) += 1;
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                w.at(e[i], e[j]) += 1;
                w.at(e[j], e[i]) += 1;
            }
        }
    }
    return w;
}

std::vector<std::int64_t> hyperdegrees(const Hypergraph& h) {
    std::vector<std::int64_t> deg(h.node_count(), 0);
    for (const auto& e : h.edges())
        for (int u : e) deg[u] += 1;
    return deg;
}

SizeDistribution size_distribution(const Hypergraph& h) {
    SizeDistribution d;
    for (const auto& e : h.edges()) d.counts[static_cast<int>(e.size())] += 1;
    return d;
}

std::vector<std::int64_t> implied_diagonal(const ProjectionMatrix& w_offdiag, int k) {
    if (k < 2) throw std::invalid_argument("uniform size k must be >= 2");
    std::vector<std::int64_t> deg(w_offdiag.n, 0);
    for (int u = 0; u < w_offdiag.n; ++u) {
        std::int64_t row = 0;
        for (int v = 0; v < w_offdiag.n; ++v)
            if (v != u) row += w_offdiag.at(u, v);
        if (row % (k - 1) != 0) throw NonDivisibleRowSum(u);
        deg[u] = row / (k - 1);
    }
    return deg;
}

}  // namespace twinsearch
