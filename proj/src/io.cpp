#include "twinsearch/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace twinsearch {

namespace {

std::string strip(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(s);
    std::string part;
    while (std::getline(stream, part, sep)) parts.push_back(part);
    return parts;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in) {
    std::vector<Hyperedge> edges;
    int declared_n = -1;
    int max_index = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::string text = strip(line);
        if (text.empty()) continue;
        if (text[0] == '#') {
            auto pos = text.find("n=");
            if (pos != std::string::npos) declared_n = std::stoi(text.substr(pos + 2));
            continue;
        }
        Hyperedge edge;
        for (const auto& token : split(text, ',')) {
            std::string t = strip(token);
            if (t.empty()) throw std::invalid_argument("empty node index in line: " + line);
            edge.push_back(std::stoi(t));
            max_index = std::max(max_index, edge.back());
        }
        edges.push_back(std::move(edge));
    }
    int n = declared_n >= 0 ? declared_n : max_index + 1;
    return Hypergraph(n, std::move(edges));
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << "# n=" << h.node_count() << "\n";
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
        out << "\n";
    }
}

ProjectionMatrix read_projection_csv(std::istream& in) {
    DiagonalMode mode = DiagonalMode::WithoutDiagonal;
    bool mode_seen = false;
    std::vector<std::vector<std::int64_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::string text = strip(line);
        if (text.empty()) continue;
        if (text[0] == '#') {
            if (text.find("diagonal=with") != std::string::npos &&
                text.find("diagonal=without") == std::string::npos) {
                mode = DiagonalMode::WithDiagonal;
                mode_seen = true;
            } else if (text.find("diagonal=without") != std::string::npos) {
                mode = DiagonalMode::WithoutDiagonal;
                mode_seen = true;
            }
            continue;
        }
        std::vector<std::int64_t> row;
        for (const auto& token : split(text, ',')) row.push_back(std::stoll(strip(token)));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("projection CSV has no matrix rows");
    const int n = static_cast<int>(rows.size());
    ProjectionMatrix w(n, mode);
    for (int u = 0; u < n; ++u) {
        if (static_cast<int>(rows[u].size()) != n)
            throw std::invalid_argument("projection CSV is not square");
        for (int v = 0; v < n; ++v) w.at(u, v) = rows[u][v];
    }
    if (!mode_seen) {
        // No header comment: infer WithDiagonal from any nonzero diagonal entry.
        for (int u = 0; u < n; ++u)
            if (w.at(u, u) != 0) {
                w.diagonal_mode = DiagonalMode::WithDiagonal;
                break;
            }
    }
    w.validate();
    return w;
}

void write_projection_csv(std::ostream& out, const ProjectionMatrix& w) {
    out << "# diagonal="
        << (w.diagonal_mode == DiagonalMode::WithDiagonal ? "with" : "without") << "\n";
    for (int u = 0; u < w.n; ++u) {
        for (int v = 0; v < w.n; ++v) out << (v ? "," : "") << w.at(u, v);
        out << "\n";
    }
}

namespace {

nlohmann::json constraints_to_json(const TwinConstraints& c) {
    nlohmann::json j;
    j["k_max"] = c.k_max;
    j["uniform_k"] = c.uniform_k ? nlohmann::json(*c.uniform_k) : nlohmann::json();
    j["edge_count"] = c.edge_count ? nlohmann::json(*c.edge_count) : nlohmann::json();
    if (c.size_dist) {
        nlohmann::json d = nlohmann::json::object();
        for (const auto& [k, count] : c.size_dist->counts) d[std::to_string(k)] = count;
        j["size_dist"] = d;
    } else {
        j["size_dist"] = nullptr;
    }
    j["match_diagonal"] = c.match_diagonal;
    j["allow_pairwise"] = c.allow_pairwise;
    return j;
}

TwinConstraints constraints_from_json(const nlohmann::json& j) {
    TwinConstraints c;
    c.k_max = j.value("k_max", 0);
    if (j.contains("uniform_k") && !j["uniform_k"].is_null()) c.uniform_k = j["uniform_k"].get<int>();
    if (j.contains("edge_count") && !j["edge_count"].is_null())
        c.edge_count = j["edge_count"].get<int>();
    if (j.contains("size_dist") && !j["size_dist"].is_null()) {
        SizeDistribution d;
        for (auto it = j["size_dist"].begin(); it != j["size_dist"].end(); ++it)
            d.counts[std::stoi(it.key())] = it.value().get<int>();
        c.size_dist = d;
    }
    c.match_diagonal = j.value("match_diagonal", false);
    c.allow_pairwise = j.value("allow_pairwise", true);
    return c;
}

}  // namespace

nlohmann::json twin_set_to_json(const TwinSet& ts) {
    nlohmann::json j;
    j["n"] = ts.source.n;
    j["diagonal_mode"] =
        ts.source.diagonal_mode == DiagonalMode::WithDiagonal ? "with" : "without";
    nlohmann::json matrix = nlohmann::json::array();
    for (int u = 0; u < ts.source.n; ++u) {
        nlohmann::json row = nlohmann::json::array();
        for (int v = 0; v < ts.source.n; ++v) row.push_back(ts.source.at(u, v));
        matrix.push_back(row);
    }
    j["projection"] = matrix;
    j["constraints"] = constraints_to_json(ts.constraints);
    nlohmann::json twins = nlohmann::json::array();
    for (const auto& h : ts.twins) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : h.edges()) edges.push_back(e);
        twins.push_back(edges);
    }
    j["twins"] = twins;
    j["stats"] = {{"nodes_expanded", ts.stats.nodes_expanded},
                  {"twins_found", ts.stats.twins_found},
                  {"wall_ms", ts.stats.wall_ms},
                  {"worst_case_bound", ts.stats.worst_case_bound.str()},
                  {"partial", ts.stats.partial}};
    return j;
}

TwinSet twin_set_from_json(const nlohmann::json& j) {
    TwinSet ts;
    const int n = j.at("n").get<int>();
    DiagonalMode mode = j.value("diagonal_mode", "without") == std::string("with")
                            ? DiagonalMode::WithDiagonal
                            : DiagonalMode::WithoutDiagonal;
    ts.source = ProjectionMatrix(n, mode);
    const auto& matrix = j.at("projection");
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) ts.source.at(u, v) = matrix.at(u).at(v).get<std::int64_t>();
    ts.source.validate();
    if (j.contains("constraints")) ts.constraints = constraints_from_json(j["constraints"]);
    for (const auto& twin : j.at("twins")) {
        std::vector<Hyperedge> edges;
        for (const auto& e : twin) edges.push_back(e.get<Hyperedge>());
        ts.twins.emplace_back(n, std::move(edges));
    }
    if (j.contains("stats")) {
        const auto& s = j["stats"];
        ts.stats.nodes_expanded = s.value("nodes_expanded", std::uint64_t(0));
        ts.stats.twins_found = s.value("twins_found", std::uint64_t(ts.twins.size()));
        ts.stats.wall_ms = s.value("wall_ms", 0.0);
        if (s.contains("worst_case_bound"))
            ts.stats.worst_case_bound = BigCount(s["worst_case_bound"].get<std::string>());
        ts.stats.partial = s.value("partial", false);
    }
    return ts;
}

nlohmann::json classification_to_json(const IsoPartition& partition, const MatePairs& mates) {
    nlohmann::json j;
    j["classes"] = partition.classes;
    j["representatives"] = partition.representatives;
    nlohmann::json exact = nlohmann::json::array();
    for (auto [a, b] : mates.exact) exact.push_back({a, b});
    nlohmann::json isomorphic = nlohmann::json::array();
    for (auto [a, b] : mates.isomorphic) isomorphic.push_back({a, b});
    j["exact_mates"] = exact;
    j["isomorphic_mates"] = isomorphic;
    return j;
}

void write_census_csv(std::ostream& out, const CliqueCensus& census) {
    out << "k,cliques\n";
    for (const auto& [k, count] : census.counts) out << k << "," << count << "\n";
}

namespace {

constexpr const char* kExhaustiveHeader =
    "m,projection_id,uniform_twins,uniform_classes,twins_unrefined,classes_unrefined,"
    "twins_edge_count,twins_diagonal,twins_both,size_dist_count,census_2,census_3,census_4,"
    "census_5,census_6,census_total_3plus,worst_case,approx_sum,nodes_expanded,wall_ms,"
    "exact_mates,isomorphic_mates,partial,mean_jaccard_none,mean_jaccard_edge_count,"
    "mean_jaccard_diagonal,mean_jaccard_both,mean_netsimilie_none,mean_netsimilie_edge_count,"
    "mean_netsimilie_diagonal,mean_netsimilie_both,mean_portrait_none,mean_portrait_edge_count,"
    "mean_portrait_diagonal,mean_portrait_both";

}  // namespace

void write_exhaustive_csv(std::ostream& out, const ExhaustiveReport& report) {
    out << kExhaustiveHeader << "\n";
    for (const auto& m_study : report.per_m) {
        int id = 0;
        for (const auto& ps : m_study.projections) {
            auto census_at = [&](int k) {
                auto it = ps.census.counts.find(k);
                return it == ps.census.counts.end() ? std::int64_t(0) : it->second;
            };
            out << ps.m << "," << id++ << "," << ps.uniform_twins << "," << ps.uniform_classes
                << "," << ps.twins_unrefined << "," << ps.classes_unrefined << ","
                << ps.twins_edge_count << "," << ps.twins_diagonal << "," << ps.twins_both << ","
                << ps.size_dist_count << "," << census_at(2) << "," << census_at(3) << ","
                << census_at(4) << "," << census_at(5) << "," << census_at(6) << ","
                << ps.census.total(3) << "," << ps.worst_case.str() << "," << ps.approx_sum.str()
                << "," << ps.nodes_expanded << "," << format_double(ps.wall_ms) << ","
                << ps.exact_mates << "," << ps.isomorphic_mates << "," << (ps.partial ? 1 : 0);
            for (const auto& group : {ps.mean_jaccard, ps.mean_netsimilie, ps.mean_portrait})
                for (double v : group) out << "," << format_double(v);
            out << "\n";
        }
    }
}

void write_exhaustive_summary_csv(std::ostream& out, const ExhaustiveReport& report) {
    out << "m,hypergraphs,labeled_projections,unique_projections,uniform_twins,uniform_classes,"
           "twins_unrefined,exact_mates,isomorphic_mates\n";
    for (const auto& m_study : report.per_m) {
        std::int64_t uniform_twins = 0, uniform_classes = 0, twins = 0, exact = 0, iso = 0;
        bool have_mates = true;
        for (const auto& ps : m_study.projections) {
            uniform_twins += ps.uniform_twins;
            uniform_classes += ps.uniform_classes;
            twins += ps.twins_unrefined;
            if (ps.exact_mates < 0) have_mates = false;
            else {
                exact += ps.exact_mates;
                iso += ps.isomorphic_mates;
            }
        }
        out << m_study.m << "," << m_study.hypergraph_count << "," << m_study.labeled_projections
            << "," << m_study.unique_projections << "," << uniform_twins << "," << uniform_classes
            << "," << twins << ",";
        if (have_mates) out << exact << "," << iso << "\n";
        else out << "-1,-1\n";
    }
}

void write_sampled_csv(std::ostream& out, const std::vector<SampledCell>& cells) {
    out << "n,m,feasible,samples,with_two_classes,undecided,fraction_ge2,mean_classes,"
           "std_classes\n";
    for (const auto& c : cells) {
        out << c.n << "," << c.m << "," << (c.feasible ? 1 : 0) << "," << c.samples << ","
            << c.with_two_classes << "," << c.undecided << "," << format_double(c.fraction_ge2)
            << "," << format_double(c.mean_classes) << "," << format_double(c.std_classes)
            << "\n";
    }
}

void write_rank_correlation_csv(std::ostream& out, const std::vector<RankCorrelationRow>& rows) {
    out << "m,matrices,clique_tau,clique_p,worst_case_tau,worst_case_p\n";
    for (const auto& r : rows) {
        out << r.m << "," << r.matrices << "," << format_double(r.clique_tau) << ","
            << format_double(r.clique_p) << "," << format_double(r.worst_case_tau) << ","
            << format_double(r.worst_case_p) << "\n";
    }
}

std::vector<RankCorrelationRow> rank_correlation_from_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("empty exhaustive CSV");
    auto columns = split(strip(header), ',');
    auto column_of = [&](const std::string& name) {
        auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end())
            throw std::invalid_argument("exhaustive CSV lacks column " + name);
        return static_cast<std::size_t>(it - columns.begin());
    };
    const std::size_t m_col = column_of("m");
    const std::size_t twins_col = column_of("twins_unrefined");
    const std::size_t worst_col = column_of("worst_case");
    const std::size_t approx_col = column_of("approx_sum");

    std::map<int, std::array<std::vector<BigCount>, 3>> per_m;  // twins, approx, worst
    std::string line;
    while (std::getline(in, line)) {
        std::string text = strip(line);
        if (text.empty()) continue;
        auto fields = split(text, ',');
        int m = std::stoi(fields.at(m_col));
        auto& [twins, approx, worst] = per_m[m];
        twins.emplace_back(BigCount(fields.at(twins_col)));
        approx.emplace_back(BigCount(fields.at(approx_col)));
        worst.emplace_back(BigCount(fields.at(worst_col)));
    }
    std::vector<RankCorrelationRow> rows;
    for (auto& [m, lists] : per_m) {
        auto& [twins, approx, worst] = lists;
        if (twins.size() < 2) continue;
        RankCorrelationRow row;
        row.m = m;
        row.matrices = static_cast<std::int64_t>(twins.size());
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

}  // namespace twinsearch
