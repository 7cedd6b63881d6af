#ifndef TWINSEARCH_HYPERGRAPH_HPP
#define TWINSEARCH_HYPERGRAPH_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "twinsearch/errors.hpp"

namespace twinsearch {

// A hyperedge is a strictly increasing list of node indices.
using Hyperedge = std::vector<int>;

// Whether a projection matrix carries node hyperdegrees on its diagonal.
enum class DiagonalMode { WithDiagonal, WithoutDiagonal };

// A simple labeled hypergraph on nodes 0..n-1. Hyperedges are stored sorted
// lexicographically, each with strictly increasing members, so equality of two
// Hypergraph values is equality of labeled incidence matrices.
class Hypergraph {
public:
    Hypergraph() = default;

    // Sorts members and hyperedges into canonical order, then validates:
    // indices in range, members distinct, |e| >= 2, no repeated hyperedge.
    // Throws std::invalid_argument on violation.
    Hypergraph(int n, std::vector<Hyperedge> edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Hyperedge>& edges() const { return edges_; }

    // Largest hyperedge size, or 0 for the empty hypergraph.
    int max_edge_size() const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
    friend auto operator<=>(const Hypergraph& a, const Hypergraph& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.edges_ <=> b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Hyperedge> edges_;
};

// Symmetric nonnegative-integer node co-occurrence matrix. Entry (u,v), u != v,
// counts hyperedges containing both u and v; the diagonal holds hyperdegrees
// when diagonal_mode is WithDiagonal and zeros otherwise.
struct ProjectionMatrix {
    int n = 0;
    DiagonalMode diagonal_mode = DiagonalMode::WithoutDiagonal;
    std::vector<std::int64_t> w;  // row-major n*n

    ProjectionMatrix() = default;
    ProjectionMatrix(int n_nodes, DiagonalMode mode)
        : n(n_nodes), diagonal_mode(mode), w(static_cast<std::size_t>(n_nodes) * n_nodes, 0) {}

    std::int64_t at(int u, int v) const { return w[static_cast<std::size_t>(u) * n + v]; }
    std::int64_t& at(int u, int v) { return w[static_cast<std::size_t>(u) * n + v]; }

    // Throws std::invalid_argument if not symmetric/nonnegative, or if the
    // diagonal is nonzero under WithoutDiagonal.
    void validate() const;

    // Copy with the diagonal zeroed and mode set to WithoutDiagonal.
    ProjectionMatrix off_diagonal() const;

    std::vector<std::int64_t> diagonal() const;

    friend bool operator==(const ProjectionMatrix&, const ProjectionMatrix&) = default;
};

// Count of hyperedges per size k >= 2.
struct SizeDistribution {
    std::map<int, int> counts;

    int total() const;
    int max_size() const;  // 0 when empty

    friend bool operator==(const SizeDistribution&, const SizeDistribution&) = default;
    friend auto operator<=>(const SizeDistribution& a, const SizeDistribution& b) {
        return a.counts <=> b.counts;
    }
};

// Node co-occurrence projection of h (W = A^T A, optionally minus D).
ProjectionMatrix project(const Hypergraph& h, DiagonalMode mode);

// Per-node count of incident hyperedges.
std::vector<std::int64_t> hyperdegrees(const Hypergraph& h);

SizeDistribution size_distribution(const Hypergraph& h);

// The hyperdegree vector forced by an off-diagonal projection under
// k-uniformity: degree(u) = row_sum(u) / (k-1). Throws NonDivisibleRowSum
// when some row sum is not divisible by k-1 (no k-uniform realization).
std::vector<std::int64_t> implied_diagonal(const ProjectionMatrix& w_offdiag, int k);

}  // namespace twinsearch

#endif
