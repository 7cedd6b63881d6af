#ifndef TWINSEARCH_CANONICAL_HPP
#define TWINSEARCH_CANONICAL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace twinsearch {

// Undirected graph with nonnegative vertex colors and nonnegative integer
// edge weights (0 = non-edge). The canonical form below is invariant under
// any relabeling that preserves colors and weights.
struct ColoredGraph {
    int n = 0;
    std::vector<std::int32_t> vcolor;   // size n
    std::vector<std::int32_t> weight;   // n*n symmetric

    ColoredGraph() = default;
    explicit ColoredGraph(int n_vertices)
        : n(n_vertices),
          vcolor(n_vertices, 0),
          weight(static_cast<std::size_t>(n_vertices) * n_vertices, 0) {}

    std::int32_t& at(int u, int v) { return weight[static_cast<std::size_t>(u) * n + v]; }
    std::int32_t at(int u, int v) const { return weight[static_cast<std::size_t>(u) * n + v]; }
    void set_edge(int u, int v, std::int32_t w) { at(u, v) = w; at(v, u) = w; }
};

// Canonical byte string of g: equal strings iff the graphs are isomorphic as
// colored weighted graphs. Computed by color refinement with
// individualization backtracking; the code is the minimum leaf serialization.
std::string canonical_code(const ColoredGraph& g);

// The vertex order realizing canonical_code: entry i is the vertex placed at
// canonical position i.
std::vector<int> canonical_labeling(const ColoredGraph& g);

}  // namespace twinsearch

#endif
