#ifndef TWINSEARCH_CLASSIFY_HPP
#define TWINSEARCH_CLASSIFY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twinsearch/canonical.hpp"
#include "twinsearch/hypergraph.hpp"

namespace twinsearch {

// Canonical byte string identifying an object up to isomorphism.
struct CanonicalCode {
    std::string bytes;

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend auto operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
        return a.bytes <=> b.bytes;
    }
};

// Canonical form of the node-hyperedge bipartite incidence graph with the two
// sides colored distinctly; invariant under node relabeling and hyperedge
// reordering.
CanonicalCode canonical_label_hypergraph(const Hypergraph& h);

// Canonical form of w as an edge-weighted graph (diagonal entries become
// vertex colors); invariant under simultaneous row/column permutation.
CanonicalCode canonical_label_projection(const ProjectionMatrix& w);

// Canonical form of the weighted line graph: hyperedge-by-hyperedge
// intersection sizes with hyperedge sizes on the diagonal (A A^T).
CanonicalCode canonical_label_line_graph(const Hypergraph& h);

// Partition of twin indices into isomorphism classes.
struct IsoPartition {
    std::vector<std::vector<int>> classes;  // each sorted; ordered by first member
    std::vector<int> representatives;       // first member of each class
};

IsoPartition partition_isomorphism_classes(const std::vector<Hypergraph>& twins);

// Index pairs (i < j) of Gram Mates among a list of hypergraphs.
struct MatePairs {
    std::vector<std::pair<int, int>> exact;
    std::vector<std::pair<int, int>> isomorphic;
};

// Counts only; avoids materializing the pair lists.
struct MateCounts {
    std::int64_t exact = 0;
    std::int64_t isomorphic = 0;
};

// Exact pairs satisfy A A^T = B B^T and A^T A = B^T B with A != B under the
// stored (lexicographically sorted) hyperedge labeling. Isomorphic pairs relax
// both equalities to isomorphism, tested independently via canonical forms of
// the projection-with-diagonal and the weighted line graph.
MatePairs gram_mates(const std::vector<Hypergraph>& twins);
MateCounts gram_mate_counts(const std::vector<Hypergraph>& twins);

}  // namespace twinsearch

#endif
