#include "twinsearch/distance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace twinsearch {

std::vector<std::vector<double>> node_features(const Hypergraph& h, int k_max) {
    const int n = h.node_count();
    const int dim = 4 + std::max(0, k_max - 1);
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim, 0.0));

    std::vector<std::int64_t> deg = hyperdegrees(h);
    std::vector<std::int64_t> size_sum(n, 0);
    std::vector<std::set<int>> neighbors(n);
    std::vector<std::vector<std::int64_t>> size_counts(n, std::vector<std::int64_t>(k_max + 1, 0));
    for (const auto& e : h.edges()) {
        for (int u : e) {
            size_sum[u] += static_cast<std::int64_t>(e.size());
            if (static_cast<int>(e.size()) <= k_max) size_counts[u][e.size()] += 1;
            for (int v : e)
                if (v != u) neighbors[u].insert(v);
        }
    }
    for (int u = 0; u < n; ++u) {
        rows[u][0] = static_cast<double>(deg[u]);
        rows[u][1] = static_cast<double>(neighbors[u].size());
        rows[u][2] = deg[u] > 0 ? static_cast<double>(size_sum[u]) / deg[u] : 0.0;
        double neighbor_deg = 0;
        for (int v : neighbors[u]) neighbor_deg += static_cast<double>(deg[v]);
        rows[u][3] = neighbors[u].empty() ? 0.0 : neighbor_deg / neighbors[u].size();
        for (int s = 2; s <= k_max; ++s) rows[u][4 + s - 2] = static_cast<double>(size_counts[u][s]);
    }
    return rows;
}

namespace {

// median, mean, population std, skewness, non-excess kurtosis
std::array<double, 5> column_stats(std::vector<double> values) {
    const std::size_t n = values.size();
    std::array<double, 5> out{0, 0, 0, 0, 0};
    if (n == 0) return out;
    std::sort(values.begin(), values.end());
    out[0] = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    double mean = 0;
    for (double x : values) mean += x;
    mean /= static_cast<double>(n);
    out[1] = mean;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : values) {
        double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    out[2] = std::sqrt(m2);
    if (m2 > 0) {
        out[3] = m3 / std::pow(m2, 1.5);
        out[4] = m4 / (m2 * m2);
    }
    return out;
}

}  // namespace

std::vector<double> netsimilie_embedding(const Hypergraph& h, int k_max) {
    auto rows = node_features(h, k_max);
    const int dim = rows.empty() ? 4 + std::max(0, k_max - 1) : static_cast<int>(rows[0].size());
    std::vector<double> embedding;
    embedding.reserve(5 * dim);
    std::vector<double> column(rows.size());
    for (int f = 0; f < dim; ++f) {
        for (std::size_t v = 0; v < rows.size(); ++v) column[v] = rows[v][f];
        for (double s : column_stats(column)) embedding.push_back(s);
    }
    return embedding;
}

double jaccard_distance(const Hypergraph& h1, const Hypergraph& h2) {
    if (h1.edge_count() == 0 && h2.edge_count() == 0)
        throw BothEmpty("jaccard distance of two empty hyperedge sets is 0/0");
    std::vector<Hyperedge> common;
    std::set_intersection(h1.edges().begin(), h1.edges().end(), h2.edges().begin(),
                          h2.edges().end(), std::back_inserter(common));
    double inter = static_cast<double>(common.size());
    double uni = static_cast<double>(h1.edge_count() + h2.edge_count()) - inter;
    return 1.0 - inter / uni;
}

double netsimilie_distance(const Hypergraph& h1, const Hypergraph& h2) {
    const int k_max = std::max({2, h1.max_edge_size(), h2.max_edge_size()});
    auto x = netsimilie_embedding(h1, k_max);
    auto y = netsimilie_embedding(h2, k_max);
    double total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double denom = std::abs(x[i]) + std::abs(y[i]);
        if (denom > 0) total += std::abs(x[i] - y[i]) / denom;
    }
    return total;
}

std::int64_t Portrait::total() const {
    std::int64_t t = 0;
    for (const auto& [key, c] : counts) t += c;
    return t;
}

Portrait portrait(const Hypergraph& h) {
    const int m = h.edge_count();
    Portrait out;
    if (m == 0) return out;

    // Hyperedge intersection graph: adjacent iff sharing >= 1 node.
    std::vector<std::vector<int>> adjacency(m);
    std::vector<std::vector<int>> incident(h.node_count());
    for (int a = 0; a < m; ++a)
        for (int u : h.edges()[a]) incident[u].push_back(a);
    std::vector<std::set<int>> adjacency_sets(m);
    for (const auto& list : incident)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                adjacency_sets[list[i]].insert(list[j]);
                adjacency_sets[list[j]].insert(list[i]);
            }
    for (int a = 0; a < m; ++a) adjacency[a].assign(adjacency_sets[a].begin(), adjacency_sets[a].end());

    std::vector<int> dist(m);
    std::deque<int> queue;
    for (int a = 0; a < m; ++a) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[a] = 0;
        queue.clear();
        queue.push_back(a);
        while (!queue.empty()) {
            int b = queue.front();
            queue.pop_front();
            for (int c : adjacency[b])
                if (dist[c] < 0) {
                    dist[c] = dist[b] + 1;
                    queue.push_back(c);
                }
        }
        // k-counts per (neighbor size, distance), with unreachable hyperedges
        // under the reserved infinite-distance bucket.
        std::map<std::pair<int, int>, std::int64_t> seen;
        for (int b = 0; b < m; ++b) {
            int size_b = static_cast<int>(h.edges()[b].size());
            int level = dist[b] >= 0 ? dist[b] : kInfiniteDistance;
            seen[{size_b, level}] += 1;
        }
        int size_a = static_cast<int>(h.edges()[a].size());
        for (const auto& [key, k] : seen)
            out.counts[{size_a, key.first, key.second, k}] += 1;
    }
    return out;
}

double portrait_divergence(const Hypergraph& h1, const Hypergraph& h2) {
    Portrait p1 = portrait(h1);
    Portrait p2 = portrait(h2);
    double t1 = static_cast<double>(p1.total());
    double t2 = static_cast<double>(p2.total());

    std::map<std::tuple<int, int, int, std::int64_t>, std::pair<double, double>> support;
    for (const auto& [key, c] : p1.counts) support[key].first = t1 > 0 ? c / t1 : 0.0;
    for (const auto& [key, c] : p2.counts) support[key].second = t2 > 0 ? c / t2 : 0.0;

    double js = 0;
    for (const auto& [key, pq] : support) {
        double p = pq.first, q = pq.second, mid = 0.5 * (p + q);
        if (p > 0) js += 0.5 * p * std::log2(p / mid);
        if (q > 0) js += 0.5 * q * std::log2(q / mid);
    }
    return std::clamp(js, 0.0, 1.0);
}

}  // namespace twinsearch
