#include "twinsearch/factor_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace twinsearch {

std::int64_t CliqueCensus::total(int min_size) const {
    std::int64_t t = 0;
    for (const auto& [k, c] : counts)
        if (k >= min_size) t += c;
    return t;
}

void TwinConstraints::validate() const {
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    if (uniform_k) {
        if (*uniform_k < 2) throw std::invalid_argument("uniform_k must be >= 2");
        if (size_dist) throw std::invalid_argument("uniform_k and size_dist are mutually exclusive");
        if (k_max != 0 && k_max != *uniform_k)
            throw std::invalid_argument("k_max must equal uniform_k when both are set");
    }
    if (size_dist) {
        for (const auto& [k, c] : size_dist->counts) {
            if (k < 2 || c < 0) throw std::invalid_argument("size_dist entries must map sizes >= 2 to counts >= 0");
        }
        if (k_max != 0 && k_max < size_dist->max_size())
            throw std::invalid_argument("k_max smaller than largest size in size_dist");
        if (edge_count && *edge_count != size_dist->total())
            throw std::invalid_argument("edge_count conflicts with size_dist total");
    }
    if (edge_count && *edge_count < 0) throw std::invalid_argument("edge_count must be >= 0");
}

int TwinConstraints::resolved_k_max(int n) const {
    if (uniform_k) return *uniform_k;
    if (k_max > 0) return k_max;
    return std::max(2, n);
}

namespace {

// Adjacency bitmask of the binarized projection, 64-bit words per node row.
std::vector<std::uint64_t> binarized_adjacency(const ProjectionMatrix& w, int words) {
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(w.n) * words, 0);
    for (int u = 0; u < w.n; ++u)
        for (int v = 0; v < w.n; ++v)
            if (u != v && w.at(u, v) > 0)
                adj[static_cast<std::size_t>(u) * words + v / 64] |= std::uint64_t(1) << (v % 64);
    return adj;
}

}  // namespace

CliqueEnumeration enumerate_cliques(const ProjectionMatrix& w, int k_max) {
    if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
    const int n = w.n;
    const int words = (n + 63) / 64;
    const auto adj = binarized_adjacency(w, words);

    CliqueEnumeration out;
    std::vector<std::vector<int>> current;  // cliques of the size being grown
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (w.at(u, v) > 0) current.push_back({u, v});
    out.census.counts[2] = static_cast<std::int64_t>(current.size());
    if (!current.empty()) out.by_size[2] = current;

    // Grow size-i cliques from size-(i-1) ones by intersecting neighbor rows,
    // extending only past the clique maximum so each clique appears once.
    std::vector<std::uint64_t> common(words);
    for (int size = 3; size <= k_max && !current.empty(); ++size) {
        std::vector<std::vector<int>> next;
        for (const auto& c : current) {
            for (int wd = 0; wd < words; ++wd) common[wd] = adj[static_cast<std::size_t>(c[0]) * words + wd];
            for (std::size_t i = 1; i < c.size(); ++i)
                for (int wd = 0; wd < words; ++wd) common[wd] &= adj[static_cast<std::size_t>(c[i]) * words + wd];
            for (int x = c.back() + 1; x < n; ++x) {
                if (common[x / 64] >> (x % 64) & 1) {
                    auto grown = c;
                    grown.push_back(x);
                    next.push_back(std::move(grown));
                }
            }
        }
        if (!next.empty()) {
            out.census.counts[size] = static_cast<std::int64_t>(next.size());
            out.by_size[size] = next;
        }
        current = std::move(next);
    }
    return out;
}

FactorGraph build_factor_graph(const ProjectionMatrix& w, const TwinConstraints& constraints) {
    constraints.validate();
    const int n = w.n;
    const int k_max = constraints.resolved_k_max(n);

    FactorGraph f;
    f.n = n;
    f.edge_index.assign(static_cast<std::size_t>(n) * n, -1);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (w.at(u, v) > 0) {
                int id = static_cast<int>(f.edge_nodes.size());
                f.edge_nodes.emplace_back(u, v);
                f.edge_index[static_cast<std::size_t>(u) * n + v] = id;
                f.edge_index[static_cast<std::size_t>(v) * n + u] = id;
            }
        }
    }

    auto keep_size = [&](int size) {
        if (constraints.uniform_k) return size == *constraints.uniform_k;
        if (size == 2 && !constraints.allow_pairwise && k_max > 2) return false;
        if (constraints.size_dist) {
            auto it = constraints.size_dist->counts.find(size);
            return it != constraints.size_dist->counts.end() && it->second > 0;
        }
        return true;
    };

    const auto enumeration = enumerate_cliques(w, std::max(2, k_max));
    for (const auto& [size, list] : enumeration.by_size) {
        if (!keep_size(size)) continue;
        for (const auto& c : list) f.cliques.push_back(c);
    }

    f.eta.resize(f.edge_nodes.size());
    f.clique_pairs.resize(f.cliques.size());
    for (int cid = 0; cid < static_cast<int>(f.cliques.size()); ++cid) {
        const auto& c = f.cliques[cid];
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                int e = f.edge_id(c[i], c[j]);
                f.eta[e].push_back(cid);
                f.clique_pairs[cid].push_back(e);
            }
        }
    }
    for (std::size_t e = 0; e < f.eta.size(); ++e) {
        if (f.eta[e].empty()) {
            auto [u, v] = f.edge_nodes[e];
            throw EmptyCandidates(u, v);
        }
    }
    return f;
}

}  // namespace twinsearch
