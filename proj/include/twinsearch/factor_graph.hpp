#ifndef TWINSEARCH_FACTOR_GRAPH_HPP
#define TWINSEARCH_FACTOR_GRAPH_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "twinsearch/hypergraph.hpp"

namespace twinsearch {

// Number of cliques of each size in a binarized projection.
struct CliqueCensus {
    std::map<int, std::int64_t> counts;

    std::int64_t total(int min_size = 2) const;
    friend bool operator==(const CliqueCensus&, const CliqueCensus&) = default;
};

struct CliqueEnumeration {
    CliqueCensus census;
    // Cliques grouped by size; within a size, lexicographic node-list order.
    std::map<int, std::vector<std::vector<int>>> by_size;
};

// Constraints that refine the twin set a search enumerates.
struct TwinConstraints {
    int k_max = 0;  // max clique size considered; 0 means "use n"
    std::optional<int> uniform_k;
    std::optional<int> edge_count;
    std::optional<SizeDistribution> size_dist;
    bool match_diagonal = false;
    bool allow_pairwise = true;

    // Cross-field invariants; throws std::invalid_argument.
    void validate() const;
    int resolved_k_max(int n) const;
};

// Bipartite structure over a binarized projection: one node per positive
// off-diagonal pair (edge-node) and one per clique (clique-node), with eta
// linking each pair to every clique that contains it. Contains all cliques up
// to k_max, not only maximal ones.
struct FactorGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edge_nodes;   // (u,v), u < v, lex order
    std::vector<std::vector<int>> cliques;         // ordered by (size, node list)
    std::vector<std::vector<int>> eta;             // edge-node id -> clique ids
    std::vector<std::vector<int>> clique_pairs;    // clique id -> edge-node ids of internal pairs
    std::vector<int> edge_index;                   // n*n lookup, -1 where absent

    int edge_id(int u, int v) const { return edge_index[static_cast<std::size_t>(u) * n + v]; }
};

// All cliques of sizes 2..k_max of the binarized projection. Size-i cliques
// are grown from size-(i-1) cliques by extending past the clique maximum, so
// each clique appears exactly once and per-size order is lexicographic.
CliqueEnumeration enumerate_cliques(const ProjectionMatrix& w, int k_max);

// Factor graph of w with clique-nodes filtered by the constraints:
// uniform_k keeps only size-k cliques, allow_pairwise=false drops 2-cliques
// when k_max > 2, and a size_dist keeps only sizes with positive count.
// Throws EmptyCandidates if some edge-node ends up with no candidates.
FactorGraph build_factor_graph(const ProjectionMatrix& w, const TwinConstraints& constraints);

}  // namespace twinsearch

#endif
