#pragma once

#include "fronts/record.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fronts {

struct NodeAttrs {
    int year = 0;
    int64_t matched_refs = 0;
    int64_t unmatched_refs = 0;
};

// Directed inter-citation network. Edge direction is citing -> cited, so
// indegree counts how often a paper is cited within the corpus. No
// self-loops, no duplicate edges.
class CitationGraph {
public:
    int add_node(const std::string& id); // idempotent, returns index
    bool add_edge(const std::string& citing, const std::string& cited); // false if dropped
    bool add_edge_idx(int citing, int cited);

    bool has_node(const std::string& id) const { return index_.count(id) != 0; }
    int node_index(const std::string& id) const; // throws DataError when unknown
    size_t node_count() const { return ids_.size(); }
    int64_t edge_count() const { return edge_count_; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(int idx) const { return ids_[static_cast<size_t>(idx)]; }

    const std::vector<int>& out_edges(int idx) const { return out_[static_cast<size_t>(idx)]; }
    const std::vector<int>& in_edges(int idx) const { return in_[static_cast<size_t>(idx)]; }

    int64_t indegree_idx(int idx) const { return static_cast<int64_t>(in_[static_cast<size_t>(idx)].size()); }

    NodeAttrs& attrs(int idx) { return attrs_[static_cast<size_t>(idx)]; }
    const NodeAttrs& attrs(int idx) const { return attrs_[static_cast<size_t>(idx)]; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<NodeAttrs> attrs_;
    std::unordered_set<uint64_t> edge_keys_;
    int64_t edge_count_ = 0;
};

// Undirected weighted projection; reciprocal directed pairs get weight 2.
class UndirectedGraph {
public:
    int add_node(const std::string& id);
    void add_weight(int a, int b, int64_t w); // accumulates; a != b, w >= 1
    // bulk path: pair (a, b) must not have been added before
    void add_weight_new_pair(int a, int b, int64_t w);

    size_t node_count() const { return ids_.size(); }
    int64_t total_weight() const { return total_weight_; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(int idx) const { return ids_[static_cast<size_t>(idx)]; }
    bool has_node(const std::string& id) const { return index_.count(id) != 0; }
    int node_index(const std::string& id) const;

    const std::vector<std::pair<int, int64_t>>& neighbors(int idx) const {
        return adj_[static_cast<size_t>(idx)];
    }
    int64_t degree(int idx) const; // weighted

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, int64_t>>> adj_; // both directions stored
    int64_t total_weight_ = 0;
};

struct MatchReport {
    int64_t matched = 0;
    int64_t unmatched = 0;
};

struct BuildResult {
    CitationGraph graph;
    MatchReport report;
};

// Resolves every record's cited_refs against the corpus. A reference whose
// DOI matches a record's DOI resolves there; otherwise the five-field key
// (author, year, source, volume, page) must match exactly. Records must be
// deduplicated first.
BuildResult build_graph(const std::vector<Record>& records);

int64_t indegree(const CitationGraph& graph, const std::string& id);

// Induced subgraph on nodes whose indegree in `graph` is >= min_indegree.
// Single pass: indegrees are measured on the full graph only.
CitationGraph extract_core(const CitationGraph& graph, int64_t min_indegree);

// Smallest absolute threshold whose core holds at most `fraction` of the
// nodes; ties in indegree keep all tied nodes.
int64_t threshold_for_top_fraction(const CitationGraph& graph, double fraction);

// (sum of full-graph indegrees over core nodes) / (edges in full graph).
double citation_share(const CitationGraph& full, const CitationGraph& core);

UndirectedGraph symmetrize(const CitationGraph& graph);

// Edge-list interchange: "citing<TAB>cited" per line, lexicographic order.
// The optional nodes table carries isolated nodes and per-node attributes.
void write_edgelist(std::ostream& out, const CitationGraph& graph);
void write_nodes_table(std::ostream& out, const CitationGraph& graph);
CitationGraph read_edgelist(std::istream& edges);
void read_nodes_table(std::istream& nodes, CitationGraph& graph);

} // namespace fronts
