#ifndef TWINSEARCH_ENSEMBLE_HPP
#define TWINSEARCH_ENSEMBLE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "twinsearch/bounds.hpp"
#include "twinsearch/classify.hpp"
#include "twinsearch/hypergraph.hpp"
#include "twinsearch/rng.hpp"
#include "twinsearch/search.hpp"

namespace twinsearch {

// Parameters of the G_k(n,m) model: m hyperedges drawn uniformly without
// replacement from the binom(n,k) possible k-sets, rejecting samples that
// leave any node uncovered.
struct EnsembleParams {
    int n = 0;
    int m = 0;
    int k = 0;
    std::uint64_t seed = 0;

    // Throws Infeasible when 2 <= k <= n, 1 <= m <= binom(n,k) or m*k >= n fails.
    void validate() const;
};

// Uniform sample from singleton-free G_k(n,m); deterministic given the rng
// state. Throws RejectionBudgetExceeded after rejection_cap failed draws.
Hypergraph sample_gknm(const EnsembleParams& params, CounterRng& rng, int rejection_cap = 100000);

// All singleton-free m-edge k-uniform simple hypergraphs in lexicographic
// order, streamed to the callback (return false to stop). Throws TooLarge
// when binom(binom(n,k), m) exceeds guard.
void enumerate_gknm(int n, int k, int m, const std::function<bool(const Hypergraph&)>& visit,
                    std::uint64_t guard = 500'000'000);

// ---------------------------------------------------------------------------
// Kendall rank correlation

struct KendallResult {
    double tau = 0;
    double p_value = 1;
};

// Tau-b with tie correction; two-sided p-value from the tie-corrected normal
// approximation of the concordance statistic. Throws Degenerate when either
// list is constant; requires equal lengths >= 2.
KendallResult kendall_tau(const std::vector<double>& x, const std::vector<double>& y);
KendallResult kendall_tau(const std::vector<BigCount>& x, const std::vector<BigCount>& y);

// ---------------------------------------------------------------------------
// Exhaustive G_k(n,m) study

// Twin-set refinement levels, in the order reports use.
enum class Refinement { None = 0, EdgeCount = 1, Diagonal = 2, Both = 3 };
inline constexpr int kRefinementCount = 4;

struct ExhaustiveOptions {
    int n = 6;
    int k = 3;
    int m_min = 2;
    int m_max = 20;
    int workers = 1;
    // Isomorphism classes and Gram Mates of the unrefined set are streamed
    // only for m <= classes_m_max; larger m report counts and size
    // distributions only.
    int classes_m_max = 13;
    // Mean pairwise distances per refinement for m <= distances_m_max (0 = off).
    int distances_m_max = 0;
    bool all_refinement_distances = false;  // false: fully-refined sets only
    Heuristic heuristic = Heuristic::MinBranching;
    SearchLimits limits;  // per-search budget; exceeding marks the row partial
};

struct ProjectionStudy {
    int m = 0;
    ProjectionMatrix projection;  // representative, diagonal carried
    std::int64_t uniform_twins = 0;
    std::int64_t uniform_classes = 0;
    std::int64_t twins_unrefined = 0;
    std::int64_t classes_unrefined = -1;  // -1 = not computed
    std::int64_t twins_edge_count = 0;
    std::int64_t twins_diagonal = 0;
    std::int64_t twins_both = 0;
    std::int64_t size_dist_count = 0;
    CliqueCensus census;
    BigCount worst_case = 0;
    BigCount approx_sum = 0;
    std::uint64_t nodes_expanded = 0;
    double wall_ms = 0;
    std::int64_t exact_mates = -1;
    std::int64_t isomorphic_mates = -1;
    bool partial = false;
    // Mean pairwise distance per refinement; NaN when not computed or < 2 twins.
    std::array<double, kRefinementCount> mean_jaccard{};
    std::array<double, kRefinementCount> mean_netsimilie{};
    std::array<double, kRefinementCount> mean_portrait{};

    ProjectionStudy() {
        mean_jaccard.fill(std::numeric_limits<double>::quiet_NaN());
        mean_netsimilie.fill(std::numeric_limits<double>::quiet_NaN());
        mean_portrait.fill(std::numeric_limits<double>::quiet_NaN());
    }
};

struct MStudy {
    int m = 0;
    std::int64_t hypergraph_count = 0;      // singleton-free k-uniform hypergraphs
    std::int64_t labeled_projections = 0;   // distinct labeled matrices
    std::int64_t unique_projections = 0;    // distinct up to isomorphism
    std::vector<ProjectionStudy> projections;
};

struct ExhaustiveReport {
    ExhaustiveOptions options;
    std::vector<MStudy> per_m;
};

// Enumerate G_k(n,m) per m, deduplicate projections up to isomorphism via
// canonical codes, then run the twin searches and statistics per unique
// projection.
ExhaustiveReport exhaustive_study(const ExhaustiveOptions& options);

// ---------------------------------------------------------------------------
// Rank correlation report (per m: twins vs worst-case size and vs summed
// clique approximation)

struct RankCorrelationRow {
    int m = 0;
    std::int64_t matrices = 0;
    double clique_tau = std::numeric_limits<double>::quiet_NaN();
    double clique_p = std::numeric_limits<double>::quiet_NaN();
    double worst_case_tau = std::numeric_limits<double>::quiet_NaN();
    double worst_case_p = std::numeric_limits<double>::quiet_NaN();
};

// Skips m with fewer than 2 unique projections.
std::vector<RankCorrelationRow> rank_correlation_report(const ExhaustiveReport& report);

// ---------------------------------------------------------------------------
// Sampled k-uniform study

struct SampledOptions {
    std::vector<int> n_values;
    std::vector<int> m_values;
    int k = 3;
    int samples = 1000;
    std::uint64_t seed = 0;
    int workers = 1;
    SearchLimits per_sample_limits;
    // false: stop each search once two isomorphism classes are seen (the
    // fraction is then exact but class counts are lower bounds); true:
    // enumerate fully and report mean/stddev of class counts.
    bool full_classes = false;
    int rejection_cap = 100000;
};

struct SampledCell {
    int n = 0;
    int m = 0;
    bool feasible = true;
    int samples = 0;
    int with_two_classes = 0;   // decided >= 2 k-uniform isomorphism classes
    int undecided = 0;          // budget hit before a second class was seen
    double fraction_ge2 = 0;
    // Over fully-enumerated samples only; NaN unless full_classes.
    double mean_classes = std::numeric_limits<double>::quiet_NaN();
    double std_classes = std::numeric_limits<double>::quiet_NaN();
};

std::vector<SampledCell> sampled_study(const SampledOptions& options);

}  // namespace twinsearch

#endif
