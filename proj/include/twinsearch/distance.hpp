#ifndef TWINSEARCH_DISTANCE_HPP
#define TWINSEARCH_DISTANCE_HPP

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "twinsearch/hypergraph.hpp"

namespace twinsearch {

// Per-node features used by the NetSimilie embedding: hyperdegree,
// co-occurrence degree, mean incident hyperedge size, mean neighbor
// hyperdegree, then one count of incident hyperedges per size 2..k_max.
// Rows permute with node labels; aggregates are therefore label-invariant.
std::vector<std::vector<double>> node_features(const Hypergraph& h, int k_max);

// Embedding: each feature column aggregated by
// {median, mean, standard deviation, skewness, kurtosis} and concatenated.
// Moments are population moments; zero-variance columns get skewness and
// kurtosis 0.
std::vector<double> netsimilie_embedding(const Hypergraph& h, int k_max);

// 1 - |A intersect B| / |A union B| over hyperedge sets. Throws BothEmpty
// when both edge sets are empty.
double jaccard_distance(const Hypergraph& h1, const Hypergraph& h2);

// Canberra distance between NetSimilie embeddings (0/0 terms contribute 0).
// The feature dimension is shared across the pair.
double netsimilie_distance(const Hypergraph& h1, const Hypergraph& h2);

// Sparse tensor indexed (own size s, neighbor size t, distance L, count k):
// the number of size-s hyperedges that see exactly k size-t hyperedges at
// hyperedge-intersection-graph distance L. L = kInfiniteDistance buckets
// disconnected pairs; distance 0 is the hyperedge itself. Only k >= 1 entries
// are stored.
inline constexpr int kInfiniteDistance = -1;

struct Portrait {
    std::map<std::tuple<int, int, int, std::int64_t>, std::int64_t> counts;

    std::int64_t total() const;
    friend bool operator==(const Portrait&, const Portrait&) = default;
};

Portrait portrait(const Hypergraph& h);

// Jensen-Shannon divergence (base-2 logs) between normalized portraits over
// the union of their supports; in [0,1], 0 iff the normalized portraits match.
double portrait_divergence(const Hypergraph& h1, const Hypergraph& h2);

}  // namespace twinsearch

#endif
