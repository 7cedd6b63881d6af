#ifndef TWINSEARCH_IO_HPP
#define TWINSEARCH_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "twinsearch/classify.hpp"
#include "twinsearch/ensemble.hpp"
#include "twinsearch/hypergraph.hpp"
#include "twinsearch/search.hpp"

namespace twinsearch {

// Hypergraph file: one hyperedge per line as comma-separated node indices,
// '#' comments, blank lines ignored. An optional "# n=K" comment declares the
// node count (otherwise max index + 1 is used).
Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

// Projection CSV: "# diagonal=with|without" comment, then the full symmetric
// matrix, one row per line.
ProjectionMatrix read_projection_csv(std::istream& in);
void write_projection_csv(std::ostream& out, const ProjectionMatrix& w);

nlohmann::json twin_set_to_json(const TwinSet& ts);
TwinSet twin_set_from_json(const nlohmann::json& j);

nlohmann::json classification_to_json(const IsoPartition& partition, const MatePairs& mates);

void write_census_csv(std::ostream& out, const CliqueCensus& census);
void write_exhaustive_csv(std::ostream& out, const ExhaustiveReport& report);
void write_exhaustive_summary_csv(std::ostream& out, const ExhaustiveReport& report);
void write_sampled_csv(std::ostream& out, const std::vector<SampledCell>& cells);
void write_rank_correlation_csv(std::ostream& out, const std::vector<RankCorrelationRow>& rows);

// Rank correlations recomputed from a previously written exhaustive CSV.
std::vector<RankCorrelationRow> rank_correlation_from_csv(std::istream& in);

}  // namespace twinsearch

#endif
