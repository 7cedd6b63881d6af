#include "twinsearch/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace twinsearch {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// binom(a, b) saturated at uint64 max; only used for ordering edge choices.
std::uint64_t binom_saturating(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        result = result * (a - b + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(result);
}

bool clique_usable(const PartialHypergraph& p, int cid, const SearchContext& ctx) {
    if (p.has(cid)) return false;
    for (int e : ctx.f.clique_pairs[cid])
        if (p.residual[e] <= 0) return false;
    if (ctx.match_diagonal)
        for (int u : ctx.f.cliques[cid])
            if (p.degrees[u] + 1 > ctx.diag_target[u]) return false;
    if (ctx.has_size_dist) {
        int size = static_cast<int>(ctx.f.cliques[cid].size());
        if (p.size_counts[size] + 1 > ctx.size_cap[size]) return false;
    }
    if (ctx.edge_count && static_cast<int>(p.chosen.size()) + 1 > *ctx.edge_count) return false;
    return true;
}

// Adds one clique to p; returns false (leaving p in a dead state) as soon as
// any constraint is violated.
bool add_clique(PartialHypergraph& p, int cid, const SearchContext& ctx) {
    const auto& nodes = ctx.f.cliques[cid];
    p.chosen.push_back(cid);
    p.chosen_mask[static_cast<std::size_t>(cid) >> 6] |= std::uint64_t(1) << (cid & 63);
    if (ctx.edge_count && static_cast<int>(p.chosen.size()) > *ctx.edge_count) return false;
    int size = static_cast<int>(nodes.size());
    p.size_counts[size] += 1;
    if (ctx.has_size_dist && p.size_counts[size] > ctx.size_cap[size]) return false;
    for (int u : nodes) {
        p.degrees[u] += 1;
        if (ctx.match_diagonal && p.degrees[u] > ctx.diag_target[u]) return false;
    }
    for (int e : ctx.f.clique_pairs[cid]) {
        p.residual[e] -= 1;
        p.residual_total -= 1;
        if (p.residual[e] < 0) return false;
    }
    return true;
}

bool passes_final_checks(const PartialHypergraph& p, const SearchContext& ctx) {
    if (ctx.edge_count && static_cast<int>(p.chosen.size()) != *ctx.edge_count) return false;
    if (ctx.has_size_dist) {
        for (std::size_t s = 0; s < ctx.size_cap.size(); ++s)
            if (p.size_counts[s] != ctx.size_cap[s]) return false;
    }
    if (ctx.match_diagonal) {
        for (int u = 0; u < ctx.n; ++u)
            if (p.degrees[u] != ctx.diag_target[u]) return false;
    }
    return true;
}

Hypergraph to_hypergraph(const PartialHypergraph& p, const SearchContext& ctx) {
    std::vector<Hyperedge> edges;
    edges.reserve(p.chosen.size());
    for (int cid : p.chosen) edges.push_back(ctx.f.cliques[cid]);
    return Hypergraph(ctx.n, std::move(edges));
}

BigCount initial_tree_bound(const SearchContext& ctx) {
    BigCount product = 1;
    for (std::size_t e = 0; e < ctx.f.eta.size(); ++e) {
        product *= binomial(static_cast<std::int64_t>(ctx.f.eta[e].size()), ctx.target[e]);
        if (product == 0) return 0;
    }
    return product;
}

void validate_search_input(const ProjectionMatrix& w, const TwinConstraints& c) {
    w.validate();
    c.validate();
    if (c.match_diagonal && w.diagonal_mode != DiagonalMode::WithDiagonal)
        throw std::invalid_argument(
            "match_diagonal requires a projection with diagonal entries");
}

void sort_twins(TwinSet& ts) { std::sort(ts.twins.begin(), ts.twins.end()); }

}  // namespace

SearchContext make_search_context(const ProjectionMatrix& w, const TwinConstraints& c) {
    SearchContext ctx;
    ctx.f = build_factor_graph(w, c);
    ctx.constraints = c;
    ctx.n = w.n;
    ctx.match_diagonal = c.match_diagonal;
    ctx.edge_count = c.edge_count;
    ctx.has_size_dist = c.size_dist.has_value();
    ctx.target.resize(ctx.f.edge_nodes.size());
    for (std::size_t e = 0; e < ctx.f.edge_nodes.size(); ++e) {
        auto [u, v] = ctx.f.edge_nodes[e];
        ctx.target[e] = static_cast<std::int32_t>(w.at(u, v));
    }
    if (ctx.match_diagonal) {
        ctx.diag_target.resize(w.n);
        for (int u = 0; u < w.n; ++u) ctx.diag_target[u] = static_cast<std::int32_t>(w.at(u, u));
    }
    int k_max = c.resolved_k_max(w.n);
    ctx.size_cap.assign(k_max + 1, 0);
    if (ctx.has_size_dist)
        for (const auto& [size, count] : c.size_dist->counts) ctx.size_cap[size] = count;
    ctx.mask_words = static_cast<int>((ctx.f.cliques.size() + 63) / 64);
    return ctx;
}

PartialHypergraph make_root(const SearchContext& ctx) {
    PartialHypergraph p;
    p.chosen_mask.assign(std::max(ctx.mask_words, 1), 0);
    p.residual.assign(ctx.target.begin(), ctx.target.end());
    p.residual_total = 0;
    for (auto r : p.residual) p.residual_total += r;
    p.degrees.assign(ctx.n, 0);
    p.size_counts.assign(ctx.size_cap.size(), 0);
    return p;
}

std::vector<int> residual_candidates(const PartialHypergraph& p, int edge,
                                     const SearchContext& ctx) {
    std::vector<int> out;
    out.reserve(ctx.f.eta[edge].size());
    for (int cid : ctx.f.eta[edge])
        if (clique_usable(p, cid, ctx)) out.push_back(cid);
    return out;
}

int select_edge(const PartialHypergraph& p, const SearchContext& ctx, Heuristic heuristic) {
    const int edges = static_cast<int>(ctx.f.edge_nodes.size());
    if (heuristic == Heuristic::FirstUnsatisfied) {
        for (int e = 0; e < edges; ++e)
            if (p.residual[e] > 0) return e;
        throw std::logic_error("select_edge called with no unsatisfied edge");
    }
    int best = -1;
    std::uint64_t best_width = std::numeric_limits<std::uint64_t>::max();
    for (int e = 0; e < edges; ++e) {
        if (p.residual[e] <= 0) continue;
        std::uint64_t usable = 0;
        for (int cid : ctx.f.eta[e])
            if (clique_usable(p, cid, ctx)) ++usable;
        std::uint64_t width = binom_saturating(usable, static_cast<std::uint64_t>(p.residual[e]));
        if (width < best_width) {
            best_width = width;
            best = e;
            if (width == 0) break;  // dead branch; expanding it ends the search here
        }
    }
    if (best < 0) throw std::logic_error("select_edge called with no unsatisfied edge");
    return best;
}

std::vector<PartialHypergraph> expand(const PartialHypergraph& p, int edge,
                                      const SearchContext& ctx) {
    std::vector<PartialHypergraph> children;
    const int need = p.residual[edge];
    if (need <= 0) throw std::logic_error("expand called on a satisfied edge");
    const auto candidates = residual_candidates(p, edge, ctx);
    const int count = static_cast<int>(candidates.size());
    if (count < need) return children;

    // Combinations over the fixed candidate order keep children set-distinct,
    // and the selected edge is fully satisfied in every child.
    std::vector<int> pick(need);
    for (int i = 0; i < need; ++i) pick[i] = i;
    for (;;) {
        PartialHypergraph child = p;
        bool alive = true;
        for (int i = 0; i < need && alive; ++i)
            alive = add_clique(child, candidates[pick[i]], ctx);
        if (alive) children.push_back(std::move(child));

        int pos = need - 1;
        while (pos >= 0 && pick[pos] == count - need + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int i = pos + 1; i < need; ++i) pick[i] = pick[i - 1] + 1;
    }
    return children;
}

TwinSet twin_search(const ProjectionMatrix& w, const TwinConstraints& c,
                    const SearchOptions& opt) {
    validate_search_input(w, c);
    TwinSet out;
    out.source = w;
    out.constraints = c;
    const auto start = Clock::now();

    SearchContext ctx;
    try {
        ctx = make_search_context(w, c);
    } catch (const EmptyCandidates&) {
        out.stats.wall_ms = elapsed_ms(start);
        return out;  // not hypergraphical under c
    }
    out.stats.worst_case_bound = initial_tree_bound(ctx);

    std::deque<PartialHypergraph> pool;
    pool.push_back(make_root(ctx));
    while (!pool.empty()) {
        if (opt.limits.node_budget && out.stats.nodes_expanded >= opt.limits.node_budget) {
            out.stats.partial = true;
            break;
        }
        if (opt.limits.wall_ms > 0 && (out.stats.nodes_expanded & 1023) == 0 &&
            elapsed_ms(start) > opt.limits.wall_ms) {
            out.stats.partial = true;
            break;
        }
        PartialHypergraph p;
        if (opt.order == SearchOrder::DepthFirst) {
            p = std::move(pool.back());
            pool.pop_back();
        } else {
            p = std::move(pool.front());
            pool.pop_front();
        }
        ++out.stats.nodes_expanded;
        if (p.residual_total == 0) {
            if (passes_final_checks(p, ctx)) {
                ++out.stats.twins_found;
                Hypergraph h = to_hypergraph(p, ctx);
                if (opt.observer && !opt.observer(h)) {
                    if (opt.collect) out.twins.push_back(std::move(h));
                    out.stats.partial = true;
                    break;
                }
                if (opt.collect) out.twins.push_back(std::move(h));
            }
            continue;
        }
        int e = select_edge(p, ctx, opt.heuristic);
        for (auto& child : expand(p, e, ctx)) pool.push_back(std::move(child));
    }
    sort_twins(out);
    out.stats.wall_ms = elapsed_ms(start);
    return out;
}

namespace {

// Shared dynamic work pool: idle workers block until an item arrives or all
// work is drained. Items are transferred by value, never shared mutably.
struct WorkPool {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<PartialHypergraph> items;
    int in_flight = 0;
    bool stopped = false;

    void push(std::vector<PartialHypergraph>&& children) {
        {
            std::lock_guard lock(mu);
            for (auto& c : children) items.push_back(std::move(c));
        }
        cv.notify_all();
    }

    // Returns false when the search is complete or stopped.
    bool pop(PartialHypergraph& out) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return stopped || !items.empty() || in_flight == 0; });
        if (stopped || items.empty()) return false;
        out = std::move(items.back());
        items.pop_back();
        ++in_flight;
        return true;
    }

    void done() {
        {
            std::lock_guard lock(mu);
            --in_flight;
        }
        cv.notify_all();
    }

    void stop() {
        {
            std::lock_guard lock(mu);
            stopped = true;
        }
        cv.notify_all();
    }
};

}  // namespace

TwinSet twin_search_parallel(const ProjectionMatrix& w, const TwinConstraints& c,
                             int workers, const SearchOptions& opt) {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    validate_search_input(w, c);
    TwinSet out;
    out.source = w;
    out.constraints = c;
    const auto start = Clock::now();

    SearchContext ctx;
    try {
        ctx = make_search_context(w, c);
    } catch (const EmptyCandidates&) {
        out.stats.wall_ms = elapsed_ms(start);
        return out;
    }
    out.stats.worst_case_bound = initial_tree_bound(ctx);

    WorkPool pool;
    pool.items.push_back(make_root(ctx));
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> twins_found{0};
    std::atomic<bool> partial{false};
    std::vector<std::vector<Hypergraph>> local_twins(workers);
    std::mutex observer_mu;

    auto worker = [&](int id) {
        PartialHypergraph p;
        while (pool.pop(p)) {
            std::uint64_t seen = nodes.fetch_add(1) + 1;
            if (opt.limits.node_budget && seen > opt.limits.node_budget) {
                partial = true;
                pool.stop();
                pool.done();
                break;
            }
            if (opt.limits.wall_ms > 0 && (seen & 1023) == 0 &&
                elapsed_ms(start) > opt.limits.wall_ms) {
                partial = true;
                pool.stop();
                pool.done();
                break;
            }
            if (p.residual_total == 0) {
                if (passes_final_checks(p, ctx)) {
                    twins_found.fetch_add(1);
                    Hypergraph h = to_hypergraph(p, ctx);
                    bool keep_going = true;
                    if (opt.observer) {
                        std::lock_guard lock(observer_mu);
                        keep_going = opt.observer(h);
                    }
                    if (opt.collect) local_twins[id].push_back(std::move(h));
                    if (!keep_going) {
                        partial = true;
                        pool.stop();
                    }
                }
            } else {
                int e = select_edge(p, ctx, opt.heuristic);
                pool.push(expand(p, e, ctx));
            }
            pool.done();
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int i = 0; i < workers; ++i) threads.emplace_back(worker, i);
    for (auto& t : threads) t.join();

    for (auto& local : local_twins)
        for (auto& h : local) out.twins.push_back(std::move(h));
    out.stats.nodes_expanded = nodes.load();
    out.stats.twins_found = twins_found.load();
    out.stats.partial = partial.load();
    sort_twins(out);
    out.stats.wall_ms = elapsed_ms(start);
    return out;
}

TwinSet brute_force_twins(const ProjectionMatrix& w, const TwinConstraints& c, std::size_t cap) {
    validate_search_input(w, c);
    TwinSet out;
    out.source = w;
    out.constraints = c;
    const auto start = Clock::now();

    FactorGraph f;
    try {
        f = build_factor_graph(w, c);
    } catch (const EmptyCandidates&) {
        out.stats.wall_ms = elapsed_ms(start);
        return out;
    }
    const std::size_t count = f.cliques.size();
    if (count > cap || count > 62)
        throw TooLarge("brute force over " + std::to_string(count) +
                       " candidate cliques exceeds the cap of " + std::to_string(cap));

    std::vector<std::int32_t> target(f.edge_nodes.size());
    int positive_target = 0;
    for (std::size_t e = 0; e < f.edge_nodes.size(); ++e) {
        auto [u, v] = f.edge_nodes[e];
        target[e] = static_cast<std::int32_t>(w.at(u, v));
        if (target[e] != 0) ++positive_target;
    }
    std::vector<std::int32_t> diag_target(w.n, 0);
    int diag_mismatch = 0;
    if (c.match_diagonal) {
        for (int u = 0; u < w.n; ++u) {
            diag_target[u] = static_cast<std::int32_t>(w.at(u, u));
            if (diag_target[u] != 0) ++diag_mismatch;
        }
    }
    int k_max = c.resolved_k_max(w.n);
    std::vector<std::int32_t> size_target(k_max + 1, 0), size_now(k_max + 1, 0);
    int size_mismatch = 0;
    if (c.size_dist) {
        for (const auto& [size, cnt] : c.size_dist->counts) size_target[size] = cnt;
        for (int s = 0; s <= k_max; ++s) size_mismatch += size_target[s] != 0;
    }

    std::vector<std::int32_t> cur(f.edge_nodes.size(), 0);
    std::vector<std::int32_t> deg(w.n, 0);
    int pair_mismatch = positive_target;
    int edges_in = 0;

    auto toggle = [&](std::size_t cid, int delta) {
        for (int e : f.clique_pairs[cid]) {
            bool was = cur[e] == target[e];
            cur[e] += delta;
            bool is = cur[e] == target[e];
            pair_mismatch += was - is;
        }
        if (c.match_diagonal) {
            for (int u : f.cliques[cid]) {
                bool was = deg[u] == diag_target[u];
                deg[u] += delta;
                bool is = deg[u] == diag_target[u];
                diag_mismatch += was - is;
            }
        } else {
            for (int u : f.cliques[cid]) deg[u] += delta;
        }
        if (c.size_dist) {
            int s = static_cast<int>(f.cliques[cid].size());
            bool was = size_now[s] == size_target[s];
            size_now[s] += delta;
            bool is = size_now[s] == size_target[s];
            size_mismatch += was - is;
        }
        edges_in += delta;
    };

    auto matches = [&] {
        if (pair_mismatch != 0) return false;
        if (c.match_diagonal && diag_mismatch != 0) return false;
        if (c.edge_count && edges_in != *c.edge_count) return false;
        if (c.size_dist && size_mismatch != 0) return false;
        return true;
    };

    auto emit = [&](std::uint64_t mask) {
        std::vector<Hyperedge> edges;
        for (std::size_t cid = 0; cid < count; ++cid)
            if (mask >> cid & 1) edges.push_back(f.cliques[cid]);
        out.twins.emplace_back(w.n, std::move(edges));
    };

    // Walk subsets in binary-reflected Gray order so each step toggles one
    // clique and the match test stays O(1) via mismatch counters.
    std::uint64_t gray = 0;
    if (matches()) emit(0);
    const std::uint64_t total = std::uint64_t(1) << count;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::uint64_t next = i ^ (i >> 1);
        std::uint64_t flipped = gray ^ next;
        int cid = std::countr_zero(flipped);
        toggle(static_cast<std::size_t>(cid), next >> cid & 1 ? 1 : -1);
        gray = next;
        if (matches()) emit(gray);
    }
    out.stats.nodes_expanded = total;
    out.stats.twins_found = out.twins.size();
    sort_twins(out);
    out.stats.wall_ms = elapsed_ms(start);
    return out;
}

}  // namespace twinsearch
