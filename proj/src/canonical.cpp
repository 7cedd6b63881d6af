#include "twinsearch/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace twinsearch {

namespace {

void append_u32(std::string& s, std::uint32_t x) {
    s.push_back(static_cast<char>(x >> 24));
    s.push_back(static_cast<char>(x >> 16));
    s.push_back(static_cast<char>(x >> 8));
    s.push_back(static_cast<char>(x));
}

// Equitable refinement: split color classes by the multiset of
// (neighbor color, edge weight) pairs until stable. Colors are returned as
// dense ranks; the rank assignment depends only on the colored structure, so
// it is isomorphism-invariant. Returns the number of distinct colors.
int refine(const ColoredGraph& g, std::vector<int>& col) {
    const int n = g.n;
    if (n == 0) return 0;
    std::vector<std::vector<std::int64_t>> sig(n);
    std::vector<int> order(n);
    int distinct = 0;
    for (;;) {
        for (int v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.clear();
            s.reserve(n);
            const std::int32_t* row = &g.weight[static_cast<std::size_t>(v) * n];
            for (int u = 0; u < n; ++u)
                if (u != v)
                    s.push_back((static_cast<std::int64_t>(col[u]) << 32) |
                                static_cast<std::uint32_t>(row[u]));
            std::sort(s.begin(), s.end());
            s.insert(s.begin(), col[v]);
        }
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return sig[a] < sig[b]; });
        int rank = 0;
        std::vector<int> next(n);
        next[order[0]] = 0;
        for (int i = 1; i < n; ++i) {
            if (sig[order[i]] != sig[order[i - 1]]) ++rank;
            next[order[i]] = rank;
        }
        col = std::move(next);
        if (rank + 1 == distinct || rank + 1 == n) return rank + 1;
        distinct = rank + 1;
    }
}

std::string serialize_leaf(const ColoredGraph& g, const std::vector<int>& col,
                           std::vector<int>& perm_out) {
    const int n = g.n;
    perm_out.assign(n, 0);
    for (int v = 0; v < n; ++v) perm_out[col[v]] = v;
    std::string s;
    s.reserve(4 + 4 * n + 2 * n * (n - 1));
    append_u32(s, static_cast<std::uint32_t>(n));
    for (int i = 0; i < n; ++i) append_u32(s, static_cast<std::uint32_t>(g.vcolor[perm_out[i]]));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            append_u32(s, static_cast<std::uint32_t>(g.at(perm_out[i], perm_out[j])));
    return s;
}

struct CanonSearch {
    const ColoredGraph& g;
    std::string best;
    std::vector<int> best_perm;
    bool have_best = false;
    std::vector<std::vector<int>> aut_gens;
    std::vector<int> orbit;  // union-find over vertices, for root-level pruning
    std::vector<int> path;   // individualized vertices on the current branch

    explicit CanonSearch(const ColoredGraph& graph) : g(graph), orbit(graph.n) {
        std::iota(orbit.begin(), orbit.end(), 0);
    }

    int find(int x) {
        while (orbit[x] != x) x = orbit[x] = orbit[orbit[x]];
        return x;
    }

    void record_automorphism(const std::vector<int>& leaf_perm) {
        std::vector<int> sigma(g.n);
        bool identity = true;
        for (int i = 0; i < g.n; ++i) {
            sigma[leaf_perm[i]] = best_perm[i];
            if (sigma[leaf_perm[i]] != leaf_perm[i]) identity = false;
        }
        if (identity) return;
        for (int v = 0; v < g.n; ++v) {
            int a = find(v), b = find(sigma[v]);
            if (a != b) orbit[a] = b;
        }
        aut_gens.push_back(std::move(sigma));
    }

    // v can be skipped when a known automorphism that fixes the current path
    // maps it onto an already-explored sibling.
    bool pruned(int v, const std::vector<int>& tried) {
        if (tried.empty()) return false;
        if (path.empty()) {
            for (int u : tried)
                if (find(u) == find(v)) return true;
        }
        for (const auto& sigma : aut_gens) {
            bool fixes_path = true;
            for (int p : path)
                if (sigma[p] != p) {
                    fixes_path = false;
                    break;
                }
            if (!fixes_path) continue;
            int image = sigma[v];
            for (int u : tried)
                if (u == image) return true;
        }
        return false;
    }

    void run(std::vector<int> col) {
        int distinct = refine(g, col);
        if (distinct == g.n) {
            std::vector<int> perm;
            std::string leaf = serialize_leaf(g, col, perm);
            if (!have_best || leaf < best) {
                best = std::move(leaf);
                best_perm = std::move(perm);
                have_best = true;
            } else if (leaf == best) {
                record_automorphism(perm);
            }
            return;
        }
        int target = -1;
        for (int c = 0; c < distinct && target < 0; ++c) {
            int count = 0;
            for (int v = 0; v < g.n; ++v) count += col[v] == c;
            if (count >= 2) target = c;
        }
        std::vector<int> tried;
        for (int v = 0; v < g.n; ++v) {
            if (col[v] != target || pruned(v, tried)) continue;
            tried.push_back(v);
            auto next = col;
            next[v] = g.n;  // unique color; refine renormalizes
            path.push_back(v);
            run(std::move(next));
            path.pop_back();
        }
    }
};

}  // namespace

std::string canonical_code(const ColoredGraph& g) {
    if (g.n == 0) {
        std::string s;
        append_u32(s, 0);
        return s;
    }
    CanonSearch search(g);
    search.run(std::vector<int>(g.vcolor.begin(), g.vcolor.end()));
    return search.best;
}

std::vector<int> canonical_labeling(const ColoredGraph& g) {
    if (g.n == 0) return {};
    CanonSearch search(g);
    search.run(std::vector<int>(g.vcolor.begin(), g.vcolor.end()));
    return search.best_perm;
}

}  // namespace twinsearch
