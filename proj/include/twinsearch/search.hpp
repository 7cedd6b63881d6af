#ifndef TWINSEARCH_SEARCH_HPP
#define TWINSEARCH_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "twinsearch/bounds.hpp"
#include "twinsearch/factor_graph.hpp"
#include "twinsearch/hypergraph.hpp"

namespace twinsearch {

enum class Heuristic { FirstUnsatisfied, MinBranching };
enum class SearchOrder { DepthFirst, BreadthFirst };

// Zero means unlimited.
struct SearchLimits {
    std::uint64_t node_budget = 0;
    double wall_ms = 0;
};

// Called on every emitted twin; returning false aborts the search and marks
// the result partial.
using TwinObserver = std::function<bool(const Hypergraph&)>;

struct SearchOptions {
    Heuristic heuristic = Heuristic::MinBranching;
    SearchOrder order = SearchOrder::DepthFirst;
    SearchLimits limits;
    bool collect = true;  // false: count twins without storing them
    TwinObserver observer;
};

// Immutable per-search context: the constrained factor graph plus constraint
// targets derived from the input projection.
struct SearchContext {
    FactorGraph f;
    TwinConstraints constraints;
    std::vector<std::int32_t> target;       // residual target per edge-node
    std::vector<std::int32_t> diag_target;  // per node; used iff match_diagonal
    std::vector<std::int32_t> size_cap;     // per size; used iff size_dist set
    std::optional<int> edge_count;
    bool match_diagonal = false;
    bool has_size_dist = false;
    int n = 0;
    int mask_words = 0;
};

// A search-tree node: cliques chosen so far plus the residual bookkeeping.
// All residual entries stay >= 0; states that would go negative are never
// constructed.
struct PartialHypergraph {
    std::vector<int> chosen;                 // clique ids, insertion order
    std::vector<std::uint64_t> chosen_mask;  // bitset over clique ids
    std::vector<std::int32_t> residual;      // per edge-node
    std::int64_t residual_total = 0;
    std::vector<std::int32_t> degrees;       // running hyperdegrees
    std::vector<std::int32_t> size_counts;   // running size distribution

    bool has(int cid) const {
        return chosen_mask[static_cast<std::size_t>(cid) >> 6] >> (cid & 63) & 1;
    }
};

struct SearchStats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t twins_found = 0;
    double wall_ms = 0;
    BigCount worst_case_bound = 0;
    bool partial = false;
};

// Enumerated twins plus provenance. Twin lists are sorted lexicographically,
// so equal sets compare equal across search orders and worker counts.
struct TwinSet {
    std::vector<Hypergraph> twins;
    ProjectionMatrix source;
    TwinConstraints constraints;
    SearchStats stats;
};

// Throws EmptyCandidates when a positive pair has no candidate cliques, and
// std::invalid_argument when match_diagonal is requested for a matrix without
// diagonal entries.
SearchContext make_search_context(const ProjectionMatrix& w, const TwinConstraints& c);

PartialHypergraph make_root(const SearchContext& ctx);

// Candidate cliques of eta_e still usable from state p: not chosen, every
// internal pair has residual >= 1, and no per-clique constraint would be
// violated by adding it.
std::vector<int> residual_candidates(const PartialHypergraph& p, int edge,
                                     const SearchContext& ctx);

// Next edge-node to satisfy. FirstUnsatisfied returns the lexicographically
// first edge with positive residual; MinBranching minimizes
// c(e) = binom(|eta'_e|, residual_e) over the residual factor graph, ties
// broken lexicographically. Requires some residual entry > 0.
int select_edge(const PartialHypergraph& p, const SearchContext& ctx, Heuristic heuristic);

// One child per combination of residual_e candidates from eta'_e; children
// that would violate any constraint are discarded. An empty result means the
// branch is dead.
std::vector<PartialHypergraph> expand(const PartialHypergraph& p, int edge,
                                      const SearchContext& ctx);

// Enumerate all simple hypergraphs whose projection under the constraint's
// diagonal convention equals w, each exactly once. A non-hypergraphical input
// yields an empty twin list, not an error.
TwinSet twin_search(const ProjectionMatrix& w, const TwinConstraints& c,
                    const SearchOptions& opt = {});

// Same twin set as twin_search, computed by a shared dynamic work pool.
// Each partial hypergraph is processed exactly once.
TwinSet twin_search_parallel(const ProjectionMatrix& w, const TwinConstraints& c,
                             int workers, const SearchOptions& opt = {});

// Independent oracle: filters every subset of the candidate cliques by
// projection equality and constraints. Throws TooLarge when the candidate
// count exceeds cap.
TwinSet brute_force_twins(const ProjectionMatrix& w, const TwinConstraints& c,
                          std::size_t cap = 25);

}  // namespace twinsearch

#endif
