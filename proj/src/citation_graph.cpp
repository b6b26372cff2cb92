#include "fronts/citation_graph.hpp"

#include "fronts/errors.hpp"
#include "fronts/strutil.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

namespace fronts {

int CitationGraph::add_node(const std::string& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    int idx = static_cast<int>(ids_.size());
    ids_.push_back(id);
    index_.emplace(id, idx);
    out_.emplace_back();
    in_.emplace_back();
    attrs_.emplace_back();
    return idx;
}

int CitationGraph::node_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw DataError("unknown node: " + id);
    return it->second;
}

bool CitationGraph::add_edge_idx(int citing, int cited) {
    if (citing == cited) return false; // self-loop
    uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(citing)) << 32) |
                   static_cast<uint32_t>(cited);
    if (!edge_keys_.insert(key).second) return false; // duplicate
    out_[static_cast<size_t>(citing)].push_back(cited);
    in_[static_cast<size_t>(cited)].push_back(citing);
    ++edge_count_;
    return true;
}

bool CitationGraph::add_edge(const std::string& citing, const std::string& cited) {
    return add_edge_idx(add_node(citing), add_node(cited));
}

int UndirectedGraph::add_node(const std::string& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    int idx = static_cast<int>(ids_.size());
    ids_.push_back(id);
    index_.emplace(id, idx);
    adj_.emplace_back();
    return idx;
}

int UndirectedGraph::node_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw DataError("unknown node: " + id);
    return it->second;
}

void UndirectedGraph::add_weight(int a, int b, int64_t w) {
    if (a == b)
        throw DataError("undirected graph does not allow self-loops");
    if (w < 1)
        throw DataError("edge weight must be >= 1");
    auto bump = [this](int u, int v, int64_t dw) {
        for (auto& [n, weight] : adj_[static_cast<size_t>(u)]) {
            if (n == v) {
                weight += dw;
                return;
            }
        }
        adj_[static_cast<size_t>(u)].push_back({v, dw});
    };
    bump(a, b, w);
    bump(b, a, w);
    total_weight_ += w;
}

void UndirectedGraph::add_weight_new_pair(int a, int b, int64_t w) {
    if (a == b)
        throw DataError("undirected graph does not allow self-loops");
    if (w < 1)
        throw DataError("edge weight must be >= 1");
    adj_[static_cast<size_t>(a)].push_back({b, w});
    adj_[static_cast<size_t>(b)].push_back({a, w});
    total_weight_ += w;
}

int64_t UndirectedGraph::degree(int idx) const {
    int64_t d = 0;
    for (const auto& [n, w] : adj_[static_cast<size_t>(idx)]) {
        (void)n;
        d += w;
    }
    return d;
}

BuildResult build_graph(const std::vector<Record>& records) {
    BuildResult result;
    CitationGraph& g = result.graph;

    std::unordered_map<std::string, int> by_key;  // five-field composite -> node
    std::unordered_map<std::string, int> by_doi;  // lowercase doi -> node
    for (const Record& r : records) {
        int idx = g.add_node(r.accession_id);
        if (static_cast<size_t>(idx) + 1 != g.node_count())
            throw DataError("build_graph: duplicate accession_id '" + r.accession_id +
                            "' (records must be deduplicated)");
        g.attrs(idx).year = r.year;
        if (!r.authors.empty() && r.year != 0) {
            RefKey key = record_key(r);
            by_key.emplace(key.match_token(), idx); // first record wins on collisions
            if (key.doi) by_doi.emplace(*key.doi, idx);
        }
    }

    for (size_t i = 0; i < records.size(); ++i) {
        int citing = static_cast<int>(i);
        for (const std::string& raw : records[i].cited_refs) {
            CitedRef ref = parse_cited_ref(raw);
            int cited = -1;
            if (ref.key) {
                if (ref.key->doi) {
                    auto it = by_doi.find(*ref.key->doi);
                    if (it != by_doi.end()) cited = it->second;
                }
                if (cited < 0) {
                    auto it = by_key.find(ref.key->match_token());
                    if (it != by_key.end()) cited = it->second;
                }
            }
            if (cited >= 0) {
                ++result.report.matched;
                ++g.attrs(citing).matched_refs;
                g.add_edge_idx(citing, cited);
            } else {
                ++result.report.unmatched;
                ++g.attrs(citing).unmatched_refs;
            }
        }
    }
    return result;
}

int64_t indegree(const CitationGraph& graph, const std::string& id) {
    return graph.indegree_idx(graph.node_index(id));
}

CitationGraph extract_core(const CitationGraph& graph, int64_t min_indegree) {
    if (min_indegree < 0)
        throw DataError("min_indegree must be >= 0");
    CitationGraph core;
    std::vector<int> remap(graph.node_count(), -1);
    for (size_t i = 0; i < graph.node_count(); ++i) {
        int idx = static_cast<int>(i);
        if (graph.indegree_idx(idx) >= min_indegree)
            remap[i] = core.add_node(graph.id(idx));
    }
    for (size_t i = 0; i < graph.node_count(); ++i) {
        if (remap[i] < 0) continue;
        core.attrs(remap[i]) = graph.attrs(static_cast<int>(i));
        for (int tgt : graph.out_edges(static_cast<int>(i)))
            if (remap[static_cast<size_t>(tgt)] >= 0)
                core.add_edge_idx(remap[i], remap[static_cast<size_t>(tgt)]);
    }
    return core;
}

int64_t threshold_for_top_fraction(const CitationGraph& graph, double fraction) {
    if (fraction <= 0.0 || fraction > 1.0)
        throw UsageError("top fraction must be in (0,1]");
    if (graph.node_count() == 0) return 0;
    std::vector<int64_t> degs;
    degs.reserve(graph.node_count());
    for (size_t i = 0; i < graph.node_count(); ++i)
        degs.push_back(graph.indegree_idx(static_cast<int>(i)));
    std::sort(degs.begin(), degs.end(), std::greater<>());
    auto target = static_cast<size_t>(fraction * static_cast<double>(degs.size()));
    if (target == 0) target = 1;
    // indegree of the target-th most cited node; ties keep all tied nodes
    return degs[target - 1];
}

double citation_share(const CitationGraph& full, const CitationGraph& core) {
    if (full.edge_count() == 0) return 0.0;
    int64_t received = 0;
    for (size_t i = 0; i < core.node_count(); ++i)
        received += full.indegree_idx(full.node_index(core.id(static_cast<int>(i))));
    return static_cast<double>(received) / static_cast<double>(full.edge_count());
}

UndirectedGraph symmetrize(const CitationGraph& graph) {
    UndirectedGraph u;
    for (size_t i = 0; i < graph.node_count(); ++i)
        u.add_node(graph.id(static_cast<int>(i)));
    // aggregate unordered pairs first so each pair is inserted exactly once
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(graph.edge_count()));
    for (size_t i = 0; i < graph.node_count(); ++i)
        for (int tgt : graph.out_edges(static_cast<int>(i)))
            pairs.emplace_back(std::min(static_cast<int>(i), tgt),
                               std::max(static_cast<int>(i), tgt));
    std::sort(pairs.begin(), pairs.end());
    for (size_t k = 0; k < pairs.size();) {
        size_t run = k + 1;
        while (run < pairs.size() && pairs[run] == pairs[k]) ++run;
        u.add_weight_new_pair(pairs[k].first, pairs[k].second,
                              static_cast<int64_t>(run - k));
        k = run;
    }
    return u;
}

void write_edgelist(std::ostream& out, const CitationGraph& graph) {
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(static_cast<size_t>(graph.edge_count()));
    for (size_t i = 0; i < graph.node_count(); ++i)
        for (int tgt : graph.out_edges(static_cast<int>(i)))
            edges.emplace_back(graph.id(static_cast<int>(i)), graph.id(tgt));
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges)
        out << a << '\t' << b << '\n';
}

void write_nodes_table(std::ostream& out, const CitationGraph& graph) {
    std::vector<int> order(graph.node_count());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return graph.id(a) < graph.id(b); });
    out << "id\tyear\tmatched_refs\tunmatched_refs\n";
    for (int idx : order) {
        const NodeAttrs& a = graph.attrs(idx);
        out << graph.id(idx) << '\t' << a.year << '\t' << a.matched_refs << '\t'
            << a.unmatched_refs << '\n';
    }
}

CitationGraph read_edgelist(std::istream& edges) {
    CitationGraph g;
    std::string line;
    size_t lineno = 0;
    while (std::getline(edges, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("edge list line " + std::to_string(lineno) +
                             ": expected 'citing<TAB>cited'");
        std::string a = trim(line.substr(0, tab));
        std::string b = trim(line.substr(tab + 1));
        if (a.empty() || b.empty())
            throw ParseError("edge list line " + std::to_string(lineno) + ": empty endpoint");
        g.add_edge(a, b);
    }
    return g;
}

void read_nodes_table(std::istream& nodes, CitationGraph& graph) {
    std::string line;
    bool header = true;
    size_t lineno = 0;
    while (std::getline(nodes, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        auto cols = split(line, '\t');
        if (cols.size() != 4)
            throw ParseError("nodes table line " + std::to_string(lineno) + ": expected 4 columns");
        int idx = graph.add_node(trim(cols[0]));
        NodeAttrs& a = graph.attrs(idx);
        auto to_i64 = [&](const std::string& s) {
            int64_t v = 0;
            auto t = trim(s);
            auto res = std::from_chars(t.data(), t.data() + t.size(), v);
            if (res.ec != std::errc())
                throw ParseError("nodes table line " + std::to_string(lineno) + ": bad number");
            return v;
        };
        a.year = static_cast<int>(to_i64(cols[1]));
        a.matched_refs = to_i64(cols[2]);
        a.unmatched_refs = to_i64(cols[3]);
    }
}

} // namespace fronts
