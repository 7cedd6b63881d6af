#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "twinsearch/distance.hpp"
#include "twinsearch/io.hpp"

using namespace twinsearch;

namespace {

int default_workers() {
    if (const char* env = std::getenv("TWINSEARCH_WORKERS")) {
        int value = std::atoi(env);
        if (value >= 1) return value;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    return in;
}

// Writes to the path, or stdout for "-".
struct OutputStream {
    std::ofstream file;
    std::ostream* stream = nullptr;

    explicit OutputStream(const std::string& path) {
        if (path.empty() || path == "-") {
            stream = &std::cout;
        } else {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            stream = &file;
        }
    }
    std::ostream& get() { return *stream; }
};

SizeDistribution parse_size_dist(const std::string& spec) {
    SizeDistribution dist;
    std::stringstream stream(spec);
    std::string item;
    while (std::getline(stream, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("size-dist entries look like SIZE:COUNT, got: " + item);
        dist.counts[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    }
    if (dist.counts.empty()) throw std::invalid_argument("empty size-dist spec");
    return dist;
}

Heuristic parse_heuristic(const std::string& name) {
    if (name == "first") return Heuristic::FirstUnsatisfied;
    if (name == "min-branching") return Heuristic::MinBranching;
    throw std::invalid_argument("heuristic must be first or min-branching");
}

struct TwinFlags {
    int k_uniform = 0;
    std::string size_dist;
    int edge_count = -1;
    int k_max = 0;
    bool match_diagonal = false;
    bool no_pairwise = false;

    TwinConstraints to_constraints() const {
        TwinConstraints c;
        if (k_uniform > 0) c.uniform_k = k_uniform;
        if (!size_dist.empty()) c.size_dist = parse_size_dist(size_dist);
        if (edge_count >= 0) c.edge_count = edge_count;
        c.k_max = k_max;
        c.match_diagonal = match_diagonal;
        c.allow_pairwise = !no_pairwise;
        c.validate();
        return c;
    }
};

void add_twin_flags(CLI::App* cmd, TwinFlags& flags) {
    auto* uniform = cmd->add_option("--k-uniform", flags.k_uniform,
                                    "restrict hyperedges to a single size K");
    auto* dist = cmd->add_option("--size-dist", flags.size_dist,
                                 "exact hyperedge size distribution, e.g. \"2:3,3:1\"");
    uniform->excludes(dist);
    dist->excludes(uniform);
    cmd->add_option("--edge-count", flags.edge_count, "exact number of hyperedges");
    cmd->add_option("--k-max", flags.k_max, "max clique size considered (default: n)");
    cmd->add_flag("--match-diagonal", flags.match_diagonal,
                  "require hyperdegrees equal to the input diagonal");
    cmd->add_flag("--no-pairwise", flags.no_pairwise,
                  "exclude 2-cliques as candidate hyperedges");
}

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumerate and analyze the twin hypergraphs of a node co-occurrence projection"};
    app.require_subcommand(1);
    std::function<int()> runner;

    // ------------------------------------------------------------------ project
    auto* project_cmd = app.add_subcommand(
        "project", "compute the node co-occurrence projection of a hypergraph file");
    {
        auto opts = std::make_shared<std::tuple<std::string, std::string, std::string>>();
        auto& [input, diagonal, out] = *opts;
        diagonal = "with";
        project_cmd->add_option("--input", std::get<0>(*opts), "hypergraph file")->required();
        project_cmd->add_option("--diagonal", std::get<1>(*opts), "with|without (default with)");
        project_cmd->add_option("--out", std::get<2>(*opts), "output CSV (default stdout)");
        project_cmd->callback([&runner, opts] {
            runner = [opts] {
                auto& [input, diagonal, out] = *opts;
                if (diagonal != "with" && diagonal != "without")
                    throw std::invalid_argument("--diagonal must be with or without");
                auto in = open_input(input);
                Hypergraph h = read_hypergraph(in);
                auto w = project(h, diagonal == "with" ? DiagonalMode::WithDiagonal
                                                       : DiagonalMode::WithoutDiagonal);
                OutputStream os(out);
                write_projection_csv(os.get(), w);
                return kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ census
    auto* census_cmd =
        app.add_subcommand("census", "count cliques of each size in the binarized projection");
    {
        auto opts = std::make_shared<std::tuple<std::string, int, std::string>>("", 0, "");
        census_cmd->add_option("--input", std::get<0>(*opts), "projection CSV")->required();
        census_cmd->add_option("--k-max", std::get<1>(*opts), "max clique size (default: n)");
        census_cmd->add_option("--out", std::get<2>(*opts), "output CSV (default stdout)");
        census_cmd->callback([&runner, opts] {
            runner = [opts] {
                auto& [input, k_max, out] = *opts;
                auto in = open_input(input);
                ProjectionMatrix w = read_projection_csv(in);
                auto enumeration = enumerate_cliques(w, k_max > 0 ? k_max : std::max(2, w.n));
                OutputStream os(out);
                write_census_csv(os.get(), enumeration.census);
                return kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ twins
    auto* twins_cmd =
        app.add_subcommand("twins", "enumerate all hypergraphs realizing a projection");
    {
        struct TwinsOptions {
            std::string input, out;
            TwinFlags flags;
            std::string heuristic = "min-branching";
            std::string order = "dfs";
            int workers = default_workers();
            std::uint64_t node_budget = 0;
            double wall_budget_ms = 0;
        };
        auto opts = std::make_shared<TwinsOptions>();
        twins_cmd->add_option("--input", opts->input, "projection CSV")->required();
        add_twin_flags(twins_cmd, opts->flags);
        twins_cmd->add_option("--heuristic", opts->heuristic, "first|min-branching");
        twins_cmd->add_option("--order", opts->order, "dfs|bfs search order");
        twins_cmd->add_option("--workers", opts->workers,
                              "worker threads (default: TWINSEARCH_WORKERS or hardware)");
        twins_cmd->add_option("--node-budget", opts->node_budget,
                              "abort after this many search nodes (0 = unlimited)");
        twins_cmd->add_option("--wall-budget-ms", opts->wall_budget_ms,
                              "abort after this much wall time (0 = unlimited)");
        twins_cmd->add_option("--out", opts->out, "output twins JSON (default stdout)");
        twins_cmd->callback([&runner, opts] {
            runner = [opts] {
                auto in = open_input(opts->input);
                ProjectionMatrix w = read_projection_csv(in);
                TwinConstraints constraints = opts->flags.to_constraints();
                SearchOptions so;
                so.heuristic = parse_heuristic(opts->heuristic);
                if (opts->order == "bfs") so.order = SearchOrder::BreadthFirst;
                else if (opts->order != "dfs")
                    throw std::invalid_argument("--order must be dfs or bfs");
                so.limits.node_budget = opts->node_budget;
                so.limits.wall_ms = opts->wall_budget_ms;
                TwinSet result = opts->workers > 1
                                     ? twin_search_parallel(w, constraints, opts->workers, so)
                                     : twin_search(w, constraints, so);
                OutputStream os(opts->out);
                os.get() << twin_set_to_json(result).dump(2) << "\n";
                if (result.stats.partial) return kExitBudget;
                return result.twins.empty() ? kExitInfeasible : kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ classify
    auto* classify_cmd = app.add_subcommand(
        "classify", "isomorphism classes and Gram Mates of an enumerated twin set");
    {
        auto opts = std::make_shared<std::pair<std::string, std::string>>();
        classify_cmd->add_option("--input", opts->first, "twins JSON")->required();
        classify_cmd->add_option("--out", opts->second, "output JSON (default stdout)");
        classify_cmd->callback([&runner, opts] {
            runner = [opts] {
                auto in = open_input(opts->first);
                nlohmann::json j;
                in >> j;
                TwinSet ts = twin_set_from_json(j);
                auto partition = partition_isomorphism_classes(ts.twins);
                auto mates = gram_mates(ts.twins);
                OutputStream os(opts->second);
                os.get() << classification_to_json(partition, mates).dump(2) << "\n";
                return kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ bounds
    auto* bounds_cmd = app.add_subcommand(
        "bounds", "combinatorial bounds on twin-set size and search cost");
    {
        struct BoundsOptions {
            std::string input, size_dist, twins_path, out;
            TwinFlags flags;
        };
        auto opts = std::make_shared<BoundsOptions>();
        bounds_cmd->add_option("--input", opts->input, "projection CSV")->required();
        bounds_cmd->add_option("--size-dist", opts->size_dist,
                               "hyperedge size distribution for the approximations");
        bounds_cmd->add_option("--twins", opts->twins_path,
                               "twins JSON; bounds evaluated for every observed distribution");
        bounds_cmd->add_option("--k-uniform", opts->flags.k_uniform,
                               "restrict the factor graph to size-K cliques");
        bounds_cmd->add_option("--k-max", opts->flags.k_max, "max clique size (default: n)");
        bounds_cmd->add_flag("--no-pairwise", opts->flags.no_pairwise, "drop 2-cliques");
        bounds_cmd->add_option("--out", opts->out, "output CSV (default stdout)");
        bounds_cmd->callback([&runner, opts] {
            runner = [opts] {
                auto in = open_input(opts->input);
                ProjectionMatrix w = read_projection_csv(in);
                TwinConstraints constraints = opts->flags.to_constraints();
                FactorGraph f = build_factor_graph(w, constraints);
                auto census = enumerate_cliques(w, constraints.resolved_k_max(w.n)).census;

                std::vector<SizeDistribution> dists;
                if (!opts->size_dist.empty()) dists.push_back(parse_size_dist(opts->size_dist));
                if (!opts->twins_path.empty()) {
                    auto twins_in = open_input(opts->twins_path);
                    nlohmann::json j;
                    twins_in >> j;
                    TwinSet ts = twin_set_from_json(j);
                    std::set<SizeDistribution> seen;
                    for (const auto& h : ts.twins) seen.insert(size_distribution(h));
                    dists.assign(seen.begin(), seen.end());
                }

                OutputStream os(opts->out);
                auto& outs = os.get();
                outs << "quantity,size_dist,value\n";
                outs << "worst_case_tree_size,," << worst_case_tree_size(f, w).str() << "\n";
                outs << "max_edge_width,," << max_edge_width(f, w).str() << "\n";
                BigCount approx_total = 0;
                for (const auto& dist : dists) {
                    std::string label;
                    for (const auto& [k, c] : dist.counts) {
                        if (!label.empty()) label += ' ';
                        label += std::to_string(k) + ":" + std::to_string(c);
                    }
                    BigCount approx = clique_approximation(census, dist);
                    approx_total += approx;
                    outs << "clique_approximation," << label << "," << approx.str() << "\n";
                    outs << "naive_upper_bound," << label << ","
                         << naive_upper_bound(w.n, dist).str() << "\n";
                }
                if (dists.size() > 1)
                    outs << "clique_approximation_sum,," << approx_total.str() << "\n";
                return kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ distances
    auto* distances_cmd = app.add_subcommand(
        "distances", "pairwise dissimilarity among an enumerated twin set");
    {
        struct DistanceOptions {
            std::string input, out;
            std::string measure = "all";
            std::string refine = "none";
            int edge_count_ref = -1;
        };
        auto opts = std::make_shared<DistanceOptions>();
        distances_cmd->add_option("--input", opts->input, "twins JSON")->required();
        distances_cmd->add_option("--measure", opts->measure,
                                  "jaccard|netsimilie|portrait|all (default all)");
        distances_cmd->add_option("--refine", opts->refine,
                                  "none|edge-count|diagonal|both|all (default none)");
        distances_cmd->add_option("--edge-count-ref", opts->edge_count_ref,
                                  "reference hyperedge count for edge-count refinement");
        distances_cmd->add_option("--out", opts->out, "output CSV (default stdout)");
        distances_cmd->callback([&runner, opts] {
            runner = [opts] {
                auto in = open_input(opts->input);
                nlohmann::json j;
                in >> j;
                TwinSet ts = twin_set_from_json(j);

                int m_ref = opts->edge_count_ref;
                if (m_ref < 0 && ts.constraints.edge_count) m_ref = *ts.constraints.edge_count;
                auto diagonal = ts.source.diagonal();
                bool have_diag = ts.source.diagonal_mode == DiagonalMode::WithDiagonal;

                std::vector<std::string> refinements;
                if (opts->refine == "all") refinements = {"none", "edge-count", "diagonal", "both"};
                else refinements = {opts->refine};
                std::vector<std::string> measures;
                if (opts->measure == "all") measures = {"jaccard", "netsimilie", "portrait"};
                else measures = {opts->measure};

                OutputStream os(opts->out);
                auto& outs = os.get();
                outs << "measure,refinement,i,j,value\n";
                for (const auto& refinement : refinements) {
                    bool need_m = refinement == "edge-count" || refinement == "both";
                    bool need_d = refinement == "diagonal" || refinement == "both";
                    if (need_m && m_ref < 0)
                        throw std::invalid_argument(
                            "edge-count refinement needs --edge-count-ref or an edge_count "
                            "constraint in the twins file");
                    if (need_d && !have_diag)
                        throw std::invalid_argument(
                            "diagonal refinement needs a projection with diagonal entries");
                    std::vector<int> subset;
                    for (int i = 0; i < static_cast<int>(ts.twins.size()); ++i) {
                        const auto& h = ts.twins[i];
                        if (need_m && h.edge_count() != m_ref) continue;
                        if (need_d && hyperdegrees(h) != diagonal) continue;
                        subset.push_back(i);
                    }
                    for (const auto& measure : measures) {
                        double total = 0;
                        std::int64_t pairs = 0;
                        for (std::size_t a = 0; a < subset.size(); ++a) {
                            for (std::size_t b = a + 1; b < subset.size(); ++b) {
                                const auto& h1 = ts.twins[subset[a]];
                                const auto& h2 = ts.twins[subset[b]];
                                double value = measure == "jaccard" ? jaccard_distance(h1, h2)
                                               : measure == "netsimilie"
                                                   ? netsimilie_distance(h1, h2)
                                                   : portrait_divergence(h1, h2);
                                outs << measure << "," << refinement << "," << subset[a] << ","
                                     << subset[b] << "," << value << "\n";
                                total += value;
                                ++pairs;
                            }
                        }
                        outs << measure << "," << refinement << ",-1,-1,"
                             << (pairs ? total / static_cast<double>(pairs) : 0.0) << "\n";
                    }
                }
                return kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ exhaustive
    auto* exhaustive_cmd = app.add_subcommand(
        "exhaustive", "exhaustive G_k(n,m) study over unique projections");
    {
        struct ExhaustiveCli {
            ExhaustiveOptions options;
            std::string heuristic = "min-branching";
            std::string out, summary_out;
        };
        auto opts = std::make_shared<ExhaustiveCli>();
        opts->options.workers = default_workers();
        exhaustive_cmd->add_option("--n", opts->options.n, "node count (default 6)");
        exhaustive_cmd->add_option("--k", opts->options.k, "uniform hyperedge size (default 3)");
        exhaustive_cmd->add_option("--m-min", opts->options.m_min, "first m (default 2)");
        exhaustive_cmd->add_option("--m-max", opts->options.m_max, "last m (default 20)");
        exhaustive_cmd->add_option("--workers", opts->options.workers, "worker threads");
        exhaustive_cmd->add_option("--classes-m-max", opts->options.classes_m_max,
                                   "stream classes/mates only for m up to this (default 13)");
        exhaustive_cmd->add_option("--distances-m-max", opts->options.distances_m_max,
                                   "compute distance means for m up to this (default off)");
        exhaustive_cmd->add_flag("--all-refinement-distances",
                                 opts->options.all_refinement_distances,
                                 "distance means for every refinement, not only fully refined");
        exhaustive_cmd->add_option("--heuristic", opts->heuristic, "first|min-branching");
        exhaustive_cmd->add_option("--node-budget", opts->options.limits.node_budget,
                                   "per-search node budget (0 = unlimited)");
        exhaustive_cmd->add_option("--wall-budget-ms", opts->options.limits.wall_ms,
                                   "per-search wall budget (0 = unlimited)");
        exhaustive_cmd->add_option("--out", opts->out, "per-projection CSV")->required();
        exhaustive_cmd->add_option("--summary-out", opts->summary_out, "per-m summary CSV");
        exhaustive_cmd->callback([&runner, opts] {
            runner = [opts] {
                opts->options.heuristic = parse_heuristic(opts->heuristic);
                ExhaustiveReport report = exhaustive_study(opts->options);
                {
                    OutputStream os(opts->out);
                    write_exhaustive_csv(os.get(), report);
                }
                if (!opts->summary_out.empty()) {
                    OutputStream os(opts->summary_out);
                    write_exhaustive_summary_csv(os.get(), report);
                }
                for (const auto& m_study : report.per_m)
                    for (const auto& ps : m_study.projections)
                        if (ps.partial) return kExitBudget;
                return kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ sample
    auto* sample_cmd = app.add_subcommand(
        "sample", "sample G_k(n,m) hypergraphs, or run the sampled twin-class study");
    {
        struct SampleCli {
            std::vector<int> n_values, m_values;
            int k = 3;
            std::uint64_t seed = 0;
            int samples = 1;
            bool study = false;
            bool full_classes = false;
            int workers = default_workers();
            std::uint64_t node_budget = 0;
            int rejection_cap = 100000;
            std::string out;
        };
        auto opts = std::make_shared<SampleCli>();
        sample_cmd->add_option("--n", opts->n_values, "node count (repeatable with --study)")
            ->required();
        sample_cmd->add_option("--m", opts->m_values, "hyperedge count (repeatable with --study)")
            ->required();
        sample_cmd->add_option("--k", opts->k, "uniform hyperedge size (default 3)");
        sample_cmd->add_option("--seed", opts->seed, "RNG seed (default 0)");
        sample_cmd->add_option("--samples", opts->samples, "samples per cell in study mode");
        sample_cmd->add_flag("--study", opts->study,
                             "run the sampled isomorphism-class study over the (n,m) grid");
        sample_cmd->add_flag("--full-classes", opts->full_classes,
                             "enumerate every twin set fully to report class-count statistics");
        sample_cmd->add_option("--workers", opts->workers, "worker threads (study mode)");
        sample_cmd->add_option("--node-budget", opts->node_budget,
                               "per-sample search node budget (study mode)");
        sample_cmd->add_option("--rejection-cap", opts->rejection_cap,
                               "max rejected draws before giving up");
        sample_cmd->add_option("--out", opts->out, "output file (default stdout)");
        sample_cmd->callback([&runner, opts] {
            runner = [opts] {
                if (opts->study) {
                    SampledOptions so;
                    so.n_values = opts->n_values;
                    so.m_values = opts->m_values;
                    so.k = opts->k;
                    so.samples = opts->samples;
                    so.seed = opts->seed;
                    so.workers = opts->workers;
                    so.full_classes = opts->full_classes;
                    so.per_sample_limits.node_budget = opts->node_budget;
                    so.rejection_cap = opts->rejection_cap;
                    auto cells = sampled_study(so);
                    OutputStream os(opts->out);
                    write_sampled_csv(os.get(), cells);
                    for (const auto& cell : cells)
                        if (cell.undecided > 0) return kExitBudget;
                    return kExitOk;
                }
                if (opts->n_values.size() != 1 || opts->m_values.size() != 1)
                    throw std::invalid_argument("without --study, give exactly one --n and --m");
                if (opts->samples != 1)
                    throw std::invalid_argument("--samples requires --study; use --seed to vary");
                EnsembleParams params{opts->n_values[0], opts->m_values[0], opts->k, opts->seed};
                CounterRng rng(CounterRng::mix(opts->seed ^ 0x67326b6eULL));
                Hypergraph h = sample_gknm(params, rng, opts->rejection_cap);
                OutputStream os(opts->out);
                write_hypergraph(os.get(), h);
                return kExitOk;
            };
        });
    }

    // ------------------------------------------------------------------ report
    auto* report_cmd = app.add_subcommand(
        "report", "Kendall rank correlations from a previously written exhaustive CSV");
    {
        auto opts = std::make_shared<std::pair<std::string, std::string>>();
        report_cmd->add_option("--input", opts->first, "exhaustive per-projection CSV")
            ->required();
        report_cmd->add_option("--out", opts->second, "output CSV (default stdout)");
        report_cmd->callback([&runner, opts] {
            runner = [opts] {
                auto in = open_input(opts->first);
                auto rows = rank_correlation_from_csv(in);
                OutputStream os(opts->second);
                write_rank_correlation_csv(os.get(), rows);
                return kExitOk;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return runner ? runner() : kExitUsage;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const EmptyCandidates& e) {
        std::cerr << "empty result: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NonDivisibleRowSum& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const BothEmpty& e) {
        std::cerr << "undefined: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Degenerate& e) {
        std::cerr << "undefined: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const TooLarge& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const RejectionBudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
