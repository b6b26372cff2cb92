#pragma once

#include "fronts/citation_graph.hpp"
#include "fronts/community.hpp"
#include "fronts/correspondence.hpp"
#include "fronts/record.hpp"
#include "fronts/textmine.hpp"

#include <map>
#include <string>
#include <vector>

namespace fronts {

struct TopPaper {
    std::string id;
    int64_t indegree = 0; // measured on the full graph
    std::string label;    // rendered reference string when records are available

    bool operator==(const TopPaper&) const = default;
};

struct FrontReport {
    int rank = 0;
    int64_t size = 0;
    int64_t intra_citations = 0; // directed core edges inside the front
    std::vector<TopPaper> top_papers; // min(5, size), ties by accession id
    std::vector<TermScore> top_terms; // min(10, vocabulary)

    bool operator==(const FrontReport&) const = default;
};

FrontReport build_report(const std::vector<std::string>& front, int rank,
                         const CitationGraph& core, const CitationGraph& full,
                         const TermIndex& index,
                         const std::map<std::string, Record>* records = nullptr);

enum class GraphFormat { Graphml, Dot, Edgelist };
GraphFormat parse_graph_format(std::string_view name); // throws UsageError

// Node order is lexicographic by id; "front" node attribute appears when a
// partition is supplied.
std::string export_graph(const CitationGraph& graph, const Partition* partition,
                         GraphFormat format);

// Figure-2-style interaction graph with edge weights; kept edges only.
std::string export_front_graph(const FrontGraph& fg, GraphFormat format);

// SVG scatter of the 2-D CA projection. Front markers carry rank labels;
// term points are optional. Deterministic bytes for identical input.
std::string render_ca_plot(const CaProjection& proj, const std::vector<std::string>& row_labels,
                           const std::vector<std::string>& col_labels = {});

// One row per front: rank, size, intra_citations, papers, terms. Semicolons
// join list entries, '|' joins entry fields, both escaped inside values.
std::string export_tables(const std::vector<FrontReport>& reports, char delim = '\t');
std::vector<FrontReport> parse_tables(std::string_view text, char delim = '\t');

// CA coordinate table: entity, type (row|col), axis1, axis2, mass,
// inertia_share. Principal coordinates unless standard_coords is set.
std::string export_ca_coords(const CaModel& model, const std::vector<std::string>& row_labels,
                             const std::vector<std::string>& col_labels,
                             bool standard_coords = false);

} // namespace fronts
