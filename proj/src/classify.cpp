#include "twinsearch/classify.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace twinsearch {

namespace {

ColoredGraph bipartite_incidence(const Hypergraph& h) {
    const int n = h.node_count();
    const int m = h.edge_count();
    ColoredGraph g(n + m);
    for (int v = 0; v < n; ++v) g.vcolor[v] = 0;
    for (int a = 0; a < m; ++a) {
        g.vcolor[n + a] = 1;
        for (int u : h.edges()[a]) g.set_edge(u, n + a, 1);
    }
    return g;
}

ColoredGraph weighted_line_graph(const Hypergraph& h) {
    const int m = h.edge_count();
    ColoredGraph g(m);
    const auto& edges = h.edges();
    for (int a = 0; a < m; ++a) {
        g.vcolor[a] = static_cast<std::int32_t>(edges[a].size());
        for (int b = a + 1; b < m; ++b) {
            std::int32_t common = 0;
            auto i = edges[a].begin();
            auto j = edges[b].begin();
            while (i != edges[a].end() && j != edges[b].end()) {
                if (*i < *j) ++i;
                else if (*j < *i) ++j;
                else { ++common; ++i; ++j; }
            }
            g.set_edge(a, b, common);
        }
    }
    return g;
}

ColoredGraph projection_graph(const ProjectionMatrix& w) {
    ColoredGraph g(w.n);
    for (int u = 0; u < w.n; ++u) {
        g.vcolor[u] = static_cast<std::int32_t>(w.at(u, u));
        for (int v = u + 1; v < w.n; ++v)
            g.set_edge(u, v, static_cast<std::int32_t>(w.at(u, v)));
    }
    return g;
}

// Labeled (non-canonical) byte key of A A^T under the stored hyperedge order.
std::string line_matrix_key(const Hypergraph& h) {
    ColoredGraph g = weighted_line_graph(h);
    std::string key;
    key.reserve(g.vcolor.size() + g.weight.size());
    for (auto c : g.vcolor) key.push_back(static_cast<char>(c));
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) key.push_back(static_cast<char>(g.at(a, b)));
    return key;
}

std::string degree_key(const Hypergraph& h) {
    std::string key;
    for (auto d : hyperdegrees(h)) key.push_back(static_cast<char>(d));
    return key;
}

}  // namespace

CanonicalCode canonical_label_hypergraph(const Hypergraph& h) {
    return {canonical_code(bipartite_incidence(h))};
}

CanonicalCode canonical_label_projection(const ProjectionMatrix& w) {
    return {canonical_code(projection_graph(w))};
}

CanonicalCode canonical_label_line_graph(const Hypergraph& h) {
    return {canonical_code(weighted_line_graph(h))};
}

IsoPartition partition_isomorphism_classes(const std::vector<Hypergraph>& twins) {
    IsoPartition out;
    std::map<std::string, int> class_of;
    for (int i = 0; i < static_cast<int>(twins.size()); ++i) {
        auto code = canonical_label_hypergraph(twins[i]);
        auto [it, inserted] = class_of.try_emplace(std::move(code.bytes),
                                                   static_cast<int>(out.classes.size()));
        if (inserted) {
            out.classes.push_back({i});
            out.representatives.push_back(i);
        } else {
            out.classes[it->second].push_back(i);
        }
    }
    return out;
}

namespace {

// Group key per twin for each flavor of mate test. Exact groups use labeled
// matrices (A^T A via hyperdegrees plus the shared off-diagonal projection,
// and A A^T via the line matrix); isomorphic groups use canonical codes.
struct MateGroups {
    std::unordered_map<std::string, std::vector<int>> exact;
    std::unordered_map<std::string, std::vector<int>> isomorphic;
};

MateGroups mate_groups(const std::vector<Hypergraph>& twins) {
    MateGroups groups;
    for (int i = 0; i < static_cast<int>(twins.size()); ++i) {
        const auto& h = twins[i];
        // A^T A differs between twins iff their projections-with-diagonal
        // differ; the off-diagonal part is compared explicitly so the
        // functions stay correct on arbitrary hypergraph lists.
        auto proj = project(h, DiagonalMode::WithDiagonal);
        std::string proj_key;
        proj_key.reserve(proj.w.size());
        for (auto x : proj.w) proj_key.push_back(static_cast<char>(x));
        groups.exact[degree_key(h) + '\x1f' + proj_key + '\x1f' + line_matrix_key(h)].push_back(i);
        groups.isomorphic[canonical_label_projection(proj).bytes + '\x1f' +
                          canonical_label_line_graph(h).bytes].push_back(i);
    }
    return groups;
}

}  // namespace

MatePairs gram_mates(const std::vector<Hypergraph>& twins) {
    auto groups = mate_groups(twins);
    MatePairs out;
    for (const auto& [key, members] : groups.exact)
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                out.exact.emplace_back(members[a], members[b]);
    for (const auto& [key, members] : groups.isomorphic)
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                out.isomorphic.emplace_back(members[a], members[b]);
    std::sort(out.exact.begin(), out.exact.end());
    std::sort(out.isomorphic.begin(), out.isomorphic.end());
    return out;
}

MateCounts gram_mate_counts(const std::vector<Hypergraph>& twins) {
    auto groups = mate_groups(twins);
    MateCounts out;
    for (const auto& [key, members] : groups.exact)
        out.exact += static_cast<std::int64_t>(members.size()) * (members.size() - 1) / 2;
    for (const auto& [key, members] : groups.isomorphic)
        out.isomorphic += static_cast<std::int64_t>(members.size()) * (members.size() - 1) / 2;
    return out;
}

}  // namespace twinsearch
