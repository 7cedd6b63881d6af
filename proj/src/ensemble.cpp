#include "twinsearch/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

#include "twinsearch/distance.hpp"

namespace twinsearch {

namespace {

std::int64_t small_binomial(int a, int b) {
    BigCount value = binomial(a, b);
    if (value > std::numeric_limits<std::int64_t>::max())
        throw TooLarge("binomial(" + std::to_string(a) + "," + std::to_string(b) +
                       ") exceeds 64 bits");
    return value.convert_to<std::int64_t>();
}

// Lexicographic rank -> k-subset of [0, n).
std::vector<int> unrank_combination(std::int64_t rank, int n, int k) {
    std::vector<int> out;
    out.reserve(k);
    int v = 0;
    for (int remaining = k; remaining > 0; --remaining) {
        for (;; ++v) {
            std::int64_t block = small_binomial(n - 1 - v, remaining - 1);
            if (rank < block) break;
            rank -= block;
        }
        out.push_back(v++);
    }
    return out;
}

std::uint64_t coverage_mask(const std::vector<int>& nodes) {
    std::uint64_t mask = 0;
    for (int u : nodes) mask |= std::uint64_t(1) << u;
    return mask;
}

void parallel_for(int workers, std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    int spawn = static_cast<int>(std::min<std::size_t>(workers, count));
    threads.reserve(spawn);
    for (int t = 0; t < spawn; ++t) threads.emplace_back(body);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

void EnsembleParams::validate() const {
    if (k < 2 || k > n) throw Infeasible("need 2 <= k <= n");
    std::int64_t total = small_binomial(n, k);
    if (m < 1 || m > total) throw Infeasible("need 1 <= m <= binom(n,k)");
    if (static_cast<std::int64_t>(m) * k < n)
        throw Infeasible("m*k < n: some node must be left uncovered");
}

Hypergraph sample_gknm(const EnsembleParams& params, CounterRng& rng, int rejection_cap) {
    params.validate();
    const std::int64_t total = small_binomial(params.n, params.k);
    const std::uint64_t full = params.n == 64 ? ~std::uint64_t(0)
                                              : (std::uint64_t(1) << params.n) - 1;
    for (int attempt = 0; attempt < rejection_cap; ++attempt) {
        // Floyd's algorithm: m distinct ranks uniformly from [0, total).
        std::unordered_set<std::int64_t> picked;
        picked.reserve(params.m * 2);
        for (std::int64_t j = total - params.m; j < total; ++j) {
            std::int64_t t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j) + 1));
            picked.insert(picked.count(t) ? j : t);
        }
        std::vector<Hyperedge> edges;
        edges.reserve(params.m);
        std::uint64_t covered = 0;
        for (std::int64_t rank : picked) {
            edges.push_back(unrank_combination(rank, params.n, params.k));
            covered |= coverage_mask(edges.back());
        }
        if (covered == full) return Hypergraph(params.n, std::move(edges));
    }
    throw RejectionBudgetExceeded("no singleton-free sample within " +
                                  std::to_string(rejection_cap) + " attempts");
}

void enumerate_gknm(int n, int k, int m, const std::function<bool(const Hypergraph&)>& visit,
                    std::uint64_t guard) {
    if (k < 2 || k > n) throw Infeasible("need 2 <= k <= n");
    const std::int64_t total = small_binomial(n, k);
    if (m < 1 || m > total) return;  // no hypergraphs to emit
    BigCount combos = binomial(total, m);
    if (combos > guard)
        throw TooLarge("enumerating " + combos.str() + " candidate hypergraphs exceeds guard");

    std::vector<std::vector<int>> all_edges;
    all_edges.reserve(total);
    for (std::int64_t r = 0; r < total; ++r) all_edges.push_back(unrank_combination(r, n, k));
    std::vector<std::uint64_t> edge_cover(total);
    for (std::int64_t r = 0; r < total; ++r) edge_cover[r] = coverage_mask(all_edges[r]);
    const std::uint64_t full = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;

    std::vector<int> pick(m);
    for (int i = 0; i < m; ++i) pick[i] = i;
    for (;;) {
        std::uint64_t covered = 0;
        for (int i = 0; i < m; ++i) covered |= edge_cover[pick[i]];
        if (covered == full) {
            std::vector<Hyperedge> edges;
            edges.reserve(m);
            for (int i = 0; i < m; ++i) edges.push_back(all_edges[pick[i]]);
            if (!visit(Hypergraph(n, std::move(edges)))) return;
        }
        int pos = m - 1;
        while (pos >= 0 && pick[pos] == total - m + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int i = pos + 1; i < m; ++i) pick[i] = pick[i - 1] + 1;
    }
}

// ---------------------------------------------------------------------------
// Kendall tau

namespace {

// Inversions (strict) counted by mergesort.
template <typename T>
std::int64_t count_inversions(std::vector<T>& values, std::vector<T>& buffer, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo < 2) return 0;
    std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(values, buffer, lo, mid) +
                       count_inversions(values, buffer, mid, hi);
    std::size_t i = lo, j = mid, out = lo;
    while (i < mid && j < hi) {
        if (values[j] < values[i]) {
            inv += static_cast<std::int64_t>(mid - i);
            buffer[out++] = std::move(values[j++]);
        } else {
            buffer[out++] = std::move(values[i++]);
        }
    }
    while (i < mid) buffer[out++] = std::move(values[i++]);
    while (j < hi) buffer[out++] = std::move(values[j++]);
    std::move(buffer.begin() + lo, buffer.begin() + hi, values.begin() + lo);
    return inv;
}

struct TieStats {
    std::int64_t pairs = 0;        // sum t(t-1)/2
    std::int64_t v = 0;            // sum t(t-1)(2t+5)
    std::int64_t v1 = 0;           // sum t(t-1)
    std::int64_t v2 = 0;           // sum t(t-1)(t-2)
};

template <typename Same>
TieStats tie_stats(std::size_t n, const Same& same) {
    TieStats out;
    std::size_t run = 1;
    auto flush = [&](std::int64_t t) {
        out.pairs += t * (t - 1) / 2;
        out.v += t * (t - 1) * (2 * t + 5);
        out.v1 += t * (t - 1);
        out.v2 += t * (t - 1) * (t - 2);
    };
    for (std::size_t i = 1; i < n; ++i) {
        if (same(i - 1, i)) {
            ++run;
        } else {
            flush(static_cast<std::int64_t>(run));
            run = 1;
        }
    }
    if (n > 0) flush(static_cast<std::int64_t>(run));
    return out;
}

template <typename T>
KendallResult kendall_impl(const std::vector<T>& x, const std::vector<T>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("kendall_tau needs two equal-length lists of size >= 2");

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    TieStats tx = tie_stats(n, [&](std::size_t a, std::size_t b) { return x[idx[a]] == x[idx[b]]; });
    TieStats joint = tie_stats(n, [&](std::size_t a, std::size_t b) {
        return x[idx[a]] == x[idx[b]] && y[idx[a]] == y[idx[b]];
    });

    std::vector<T> ys(n), buffer(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[idx[i]];
    std::int64_t swaps = count_inversions(ys, buffer, 0, n);
    // after the mergesort ys is sorted, so y tie runs come for free
    TieStats ty = tie_stats(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });

    const std::int64_t n0 = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (n0 == tx.pairs || n0 == ty.pairs)
        throw Degenerate("kendall_tau of a constant list is undefined");

    const std::int64_t con_minus_dis = n0 - tx.pairs - ty.pairs + joint.pairs - 2 * swaps;
    const double denominator = std::sqrt(static_cast<double>(n0 - tx.pairs)) *
                               std::sqrt(static_cast<double>(n0 - ty.pairs));

    KendallResult result;
    result.tau = static_cast<double>(con_minus_dis) / denominator;

    const double nn = static_cast<double>(n);
    double variance = (nn * (nn - 1) * (2 * nn + 5) - static_cast<double>(tx.v) -
                       static_cast<double>(ty.v)) /
                      18.0;
    variance += static_cast<double>(tx.v1) * static_cast<double>(ty.v1) / (2.0 * nn * (nn - 1));
    if (n > 2)
        variance += static_cast<double>(tx.v2) * static_cast<double>(ty.v2) /
                    (9.0 * nn * (nn - 1) * (nn - 2));
    if (variance <= 0) {
        result.p_value = 1.0;
        return result;
    }
    double z = static_cast<double>(con_minus_dis) / std::sqrt(variance);
    result.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
    return result;
}

}  // namespace

KendallResult kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    return kendall_impl(x, y);
}

KendallResult kendall_tau(const std::vector<BigCount>& x, const std::vector<BigCount>& y) {
    return kendall_impl(x, y);
}

// ---------------------------------------------------------------------------
// Exhaustive study

namespace {

std::string pack_projection(const ProjectionMatrix& w) {
    std::string key;
    key.reserve(w.w.size() * 2);
    for (auto value : w.w) {
        key.push_back(static_cast<char>(value & 0xff));
        key.push_back(static_cast<char>(value >> 8 & 0xff));
    }
    return key;
}

double mean_pairwise(const std::vector<double>& values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double total = 0;
    for (double v : values) total += v;
    return total / static_cast<double>(values.size());
}

// Mean pairwise distances of one refined subset, for all three measures.
void subset_distance_means(const std::vector<const Hypergraph*>& subset, double& jaccard_mean,
                           double& netsimilie_mean, double& portrait_mean) {
    if (subset.size() < 2) {
        jaccard_mean = netsimilie_mean = portrait_mean =
            std::numeric_limits<double>::quiet_NaN();
        return;
    }
    int k_max = 2;
    for (const auto* h : subset) k_max = std::max(k_max, h->max_edge_size());
    std::vector<std::vector<double>> embeddings;
    std::vector<Portrait> portraits;
    embeddings.reserve(subset.size());
    portraits.reserve(subset.size());
    for (const auto* h : subset) {
        embeddings.push_back(netsimilie_embedding(*h, k_max));
        portraits.push_back(portrait(*h));
    }
    std::vector<double> jaccard_values, netsimilie_values, portrait_values;
    for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            jaccard_values.push_back(jaccard_distance(*subset[a], *subset[b]));
            double canberra = 0;
            for (std::size_t i = 0; i < embeddings[a].size(); ++i) {
                double denom = std::abs(embeddings[a][i]) + std::abs(embeddings[b][i]);
                if (denom > 0) canberra += std::abs(embeddings[a][i] - embeddings[b][i]) / denom;
            }
            netsimilie_values.push_back(canberra);

            double t1 = static_cast<double>(portraits[a].total());
            double t2 = static_cast<double>(portraits[b].total());
            std::map<std::tuple<int, int, int, std::int64_t>, std::pair<double, double>> support;
            for (const auto& [key, c] : portraits[a].counts) support[key].first = c / t1;
            for (const auto& [key, c] : portraits[b].counts) support[key].second = c / t2;
            double js = 0;
            for (const auto& [key, pq] : support) {
                double mid = 0.5 * (pq.first + pq.second);
                if (pq.first > 0) js += 0.5 * pq.first * std::log2(pq.first / mid);
                if (pq.second > 0) js += 0.5 * pq.second * std::log2(pq.second / mid);
            }
            portrait_values.push_back(std::clamp(js, 0.0, 1.0));
        }
    }
    jaccard_mean = mean_pairwise(jaccard_values);
    netsimilie_mean = mean_pairwise(netsimilie_values);
    portrait_mean = mean_pairwise(portrait_values);
}

void run_projection_study(ProjectionStudy& study, const ExhaustiveOptions& options) {
    const ProjectionMatrix& w = study.projection;
    study.census = enumerate_cliques(w, w.n).census;

    TwinConstraints unrefined;
    study.worst_case = worst_case_tree_size(build_factor_graph(w, unrefined), w);

    SearchOptions search_options;
    search_options.heuristic = options.heuristic;
    search_options.limits = options.limits;

    // k-uniform twins and their isomorphism classes
    TwinConstraints uniform;
    uniform.uniform_k = options.k;
    TwinSet uniform_set = twin_search(w, uniform, search_options);
    study.uniform_twins = static_cast<std::int64_t>(uniform_set.stats.twins_found);
    study.uniform_classes =
        static_cast<std::int64_t>(partition_isomorphism_classes(uniform_set.twins).classes.size());
    study.partial |= uniform_set.stats.partial;
    study.nodes_expanded += uniform_set.stats.nodes_expanded;

    const auto diagonal = w.diagonal();
    const bool want_distances = options.distances_m_max > 0 && study.m <= options.distances_m_max;
    const bool classify_set = study.m <= options.classes_m_max;
    const bool collect = classify_set || want_distances;
    std::set<SizeDistribution> observed_dists;

    TwinSet unrefined_set;
    if (collect) {
        unrefined_set = twin_search(w, unrefined, search_options);
        study.twins_unrefined = static_cast<std::int64_t>(unrefined_set.stats.twins_found);
        for (const auto& h : unrefined_set.twins) {
            observed_dists.insert(size_distribution(h));
            bool m_match = h.edge_count() == study.m;
            bool d_match = hyperdegrees(h) == diagonal;
            study.twins_edge_count += m_match;
            study.twins_diagonal += d_match;
            study.twins_both += m_match && d_match;
        }
        if (classify_set) {
            study.classes_unrefined = static_cast<std::int64_t>(
                partition_isomorphism_classes(unrefined_set.twins).classes.size());
            MateCounts mates = gram_mate_counts(unrefined_set.twins);
            study.exact_mates = mates.exact;
            study.isomorphic_mates = mates.isomorphic;
        }
        study.partial |= unrefined_set.stats.partial;
        study.nodes_expanded += unrefined_set.stats.nodes_expanded;
        study.wall_ms = unrefined_set.stats.wall_ms;
    } else {
        // Streaming pass: counts and size distributions without storing twins.
        SearchOptions streaming = search_options;
        streaming.collect = false;
        streaming.observer = [&](const Hypergraph& h) {
            observed_dists.insert(size_distribution(h));
            bool m_match = h.edge_count() == study.m;
            bool d_match = hyperdegrees(h) == diagonal;
            study.twins_edge_count += m_match;
            study.twins_diagonal += d_match;
            study.twins_both += m_match && d_match;
            return true;
        };
        TwinSet counted = twin_search(w, unrefined, streaming);
        study.twins_unrefined = static_cast<std::int64_t>(counted.stats.twins_found);
        study.partial |= counted.stats.partial;
        study.nodes_expanded += counted.stats.nodes_expanded;
        study.wall_ms = counted.stats.wall_ms;
    }

    study.size_dist_count = static_cast<std::int64_t>(observed_dists.size());
    study.approx_sum = 0;
    for (const auto& dist : observed_dists)
        study.approx_sum += clique_approximation(study.census, dist);

    if (want_distances) {
        auto run_subset = [&](Refinement level, auto&& keep) {
            std::vector<const Hypergraph*> subset;
            for (const auto& h : unrefined_set.twins)
                if (keep(h)) subset.push_back(&h);
            int i = static_cast<int>(level);
            subset_distance_means(subset, study.mean_jaccard[i], study.mean_netsimilie[i],
                                  study.mean_portrait[i]);
        };
        if (options.all_refinement_distances) {
            run_subset(Refinement::None, [](const Hypergraph&) { return true; });
            run_subset(Refinement::EdgeCount,
                       [&](const Hypergraph& h) { return h.edge_count() == study.m; });
            run_subset(Refinement::Diagonal,
                       [&](const Hypergraph& h) { return hyperdegrees(h) == diagonal; });
        }
        run_subset(Refinement::Both, [&](const Hypergraph& h) {
            return h.edge_count() == study.m && hyperdegrees(h) == diagonal;
        });
    }
}

}  // namespace

ExhaustiveReport exhaustive_study(const ExhaustiveOptions& options) {
    ExhaustiveReport report;
    report.options = options;
    const int m_count = options.m_max - options.m_min + 1;
    if (m_count <= 0) return report;
    report.per_m.resize(m_count);

    // Phase 1: enumerate hypergraphs, dedup projections up to isomorphism.
    parallel_for(options.workers, m_count, [&](std::size_t slot) {
        const int m = options.m_min + static_cast<int>(slot);
        MStudy& study = report.per_m[slot];
        study.m = m;
        std::unordered_set<std::string> labeled;
        std::map<std::string, ProjectionMatrix> representatives;  // canon code -> projection
        enumerate_gknm(options.n, options.k, m, [&](const Hypergraph& h) {
            ++study.hypergraph_count;
            ProjectionMatrix w = project(h, DiagonalMode::WithDiagonal);
            if (labeled.insert(pack_projection(w)).second)
                representatives.try_emplace(canonical_label_projection(w).bytes, std::move(w));
            return true;
        });
        study.labeled_projections = static_cast<std::int64_t>(labeled.size());
        study.unique_projections = static_cast<std::int64_t>(representatives.size());
        study.projections.reserve(representatives.size());
        for (auto& [code, w] : representatives) {
            ProjectionStudy ps;
            ps.m = m;
            ps.projection = std::move(w);
            study.projections.push_back(std::move(ps));
        }
    });

    // Phase 2: per-projection searches and statistics, flattened for balance.
    std::vector<ProjectionStudy*> tasks;
    for (auto& m_study : report.per_m)
        for (auto& ps : m_study.projections) tasks.push_back(&ps);
    parallel_for(options.workers, tasks.size(),
                 [&](std::size_t i) { run_projection_study(*tasks[i], options); });
    return report;
}

std::vector<RankCorrelationRow> rank_correlation_report(const ExhaustiveReport& report) {
    std::vector<RankCorrelationRow> rows;
    for (const auto& m_study : report.per_m) {
        if (m_study.unique_projections < 2) continue;
        RankCorrelationRow row;
        row.m = m_study.m;
        row.matrices = m_study.unique_projections;
        std::vector<BigCount> twins, approx, worst;
        for (const auto& ps : m_study.projections) {
            twins.emplace_back(ps.twins_unrefined);
            approx.push_back(ps.approx_sum);
            worst.push_back(ps.worst_case);
        }
        try {
            auto r = kendall_tau(twins, approx);
            row.clique_tau = r.tau;
            row.clique_p = r.p_value;
        } catch (const Degenerate&) {
        }
        try {
            auto r = kendall_tau(twins, worst);
            row.worst_case_tau = r.tau;
            row.worst_case_p = r.p_value;
        } catch (const Degenerate&) {
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Sampled study

std::vector<SampledCell> sampled_study(const SampledOptions& options) {
    std::vector<SampledCell> cells;
    for (int n : options.n_values) {
        for (int m : options.m_values) {
            SampledCell cell;
            cell.n = n;
            cell.m = m;
            EnsembleParams params{n, m, options.k, options.seed};
            try {
                params.validate();
            } catch (const Infeasible&) {
                cell.feasible = false;
                cells.push_back(cell);
                continue;
            }
            std::atomic<int> with_two{0}, undecided{0};
            std::mutex class_mu;
            std::vector<std::int64_t> class_counts;
            parallel_for(options.workers, options.samples, [&](std::size_t i) {
                std::uint64_t seed = CounterRng::mix(options.seed ^ 0x7477696e73ULL);
                seed = CounterRng::mix(seed ^ static_cast<std::uint64_t>(n) << 32 ^
                                       static_cast<std::uint64_t>(m));
                seed = CounterRng::mix(seed ^ i);
                CounterRng rng(seed);
                Hypergraph sample = sample_gknm(params, rng, options.rejection_cap);
                ProjectionMatrix w = project(sample, DiagonalMode::WithoutDiagonal);

                TwinConstraints constraints;
                constraints.uniform_k = options.k;
                std::unordered_set<std::string> codes;
                SearchOptions search_options;
                search_options.collect = false;
                search_options.limits = options.per_sample_limits;
                search_options.observer = [&](const Hypergraph& twin) {
                    codes.insert(canonical_label_hypergraph(twin).bytes);
                    return options.full_classes || codes.size() < 2;
                };
                TwinSet result = twin_search(w, constraints, search_options);
                if (codes.size() >= 2) with_two.fetch_add(1);
                else if (result.stats.partial) undecided.fetch_add(1);
                if (options.full_classes && !result.stats.partial) {
                    std::lock_guard lock(class_mu);
                    class_counts.push_back(static_cast<std::int64_t>(codes.size()));
                }
            });
            cell.samples = options.samples;
            cell.with_two_classes = with_two.load();
            cell.undecided = undecided.load();
            cell.fraction_ge2 =
                static_cast<double>(cell.with_two_classes) / std::max(1, cell.samples);
            if (options.full_classes && !class_counts.empty()) {
                double mean = 0;
                for (auto c : class_counts) mean += static_cast<double>(c);
                mean /= static_cast<double>(class_counts.size());
                double var = 0;
                for (auto c : class_counts) {
                    double d = static_cast<double>(c) - mean;
                    var += d * d;
                }
                var /= static_cast<double>(class_counts.size());
                cell.mean_classes = mean;
                cell.std_classes = std::sqrt(var);
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

}  // namespace twinsearch
