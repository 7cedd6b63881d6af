#include "twinsearch/bounds.hpp"

namespace twinsearch {

BigCount binomial(std::int64_t a, std::int64_t b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    BigCount result = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
        result *= a - b + i;
        result /= i;  // exact: result is binom(a-b+i, i) after the division
    }
    return result;
}

BigCount worst_case_tree_size(const FactorGraph& f, const ProjectionMatrix& w) {
    BigCount product = 1;
    for (std::size_t e = 0; e < f.edge_nodes.size(); ++e) {
        auto [u, v] = f.edge_nodes[e];
        product *= binomial(static_cast<std::int64_t>(f.eta[e].size()), w.at(u, v));
        if (product == 0) return 0;
    }
    return product;
}

BigCount max_edge_width(const FactorGraph& f, const ProjectionMatrix& w) {
    BigCount widest = 0;
    for (std::size_t e = 0; e < f.edge_nodes.size(); ++e) {
        auto [u, v] = f.edge_nodes[e];
        BigCount width = binomial(static_cast<std::int64_t>(f.eta[e].size()), w.at(u, v));
        if (width > widest) widest = width;
    }
    return widest;
}

BigCount clique_approximation(const CliqueCensus& census, const SizeDistribution& sizes) {
    BigCount product = 1;
    for (const auto& [k, mk] : sizes.counts) {
        if (mk <= 0) continue;
        auto it = census.counts.find(k);
        std::int64_t ck = it == census.counts.end() ? 0 : it->second;
        product *= binomial(ck, mk);
        if (product == 0) return 0;
    }
    return product;
}

BigCount naive_upper_bound(int n, const SizeDistribution& sizes) {
    BigCount product = 1;
    for (const auto& [k, mk] : sizes.counts) {
        if (mk <= 0) continue;
        product *= binomial(binomial(n, k).convert_to<std::int64_t>(), mk);
        if (product == 0) return 0;
    }
    return product;
}

}  // namespace twinsearch
