#include "fronts/synthgen.hpp"

#include "fronts/errors.hpp"
#include "fronts/export_parser.hpp"
#include "fronts/rng.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <istream>
#include <ostream>
#include <set>

using nlohmann::json;

namespace fronts {

int64_t GroundTruth::total_edges() const {
    return static_cast<int64_t>(edges.size());
}

int64_t GroundTruth::pair_edges(int a, int b) const {
    if (a == b) return block_edges[static_cast<size_t>(a)][static_cast<size_t>(b)];
    return block_edges[static_cast<size_t>(a)][static_cast<size_t>(b)] +
           block_edges[static_cast<size_t>(b)][static_cast<size_t>(a)];
}

namespace {

std::string node_id(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "SYN-%06d", i);
    return buf;
}

void validate(const SynthSpec& spec) {
    if (spec.cluster_sizes.empty())
        throw UsageError("synth spec needs at least one cluster");
    for (int s : spec.cluster_sizes)
        if (s < 0) throw UsageError("cluster sizes must be >= 0");
    if (spec.p_in < 0 || spec.p_in > 1 || spec.p_out < 0 || spec.p_out > 1)
        throw UsageError("probabilities must lie in [0,1]");
    if (spec.vocab_per_cluster < 0 || spec.shared_vocab < 0 || spec.words_per_abstract < 0)
        throw UsageError("vocabulary counts must be >= 0");
}

} // namespace

SynthResult generate(const SynthSpec& spec) {
    validate(spec);
    const int k = static_cast<int>(spec.cluster_sizes.size());
    int n = 0;
    std::vector<int> cluster_of;
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < spec.cluster_sizes[static_cast<size_t>(c)]; ++i) {
            cluster_of.push_back(c);
            ++n;
        }

    SynthResult result;
    GroundTruth& truth = result.truth;
    truth.block_edges.assign(static_cast<size_t>(k), std::vector<int64_t>(static_cast<size_t>(k), 0));
    truth.planted_vocab.resize(static_cast<size_t>(k));
    truth.term_doc_counts.resize(static_cast<size_t>(k));
    for (int c = 0; c < k; ++c)
        for (int w = 0; w < spec.vocab_per_cluster; ++w)
            truth.planted_vocab[static_cast<size_t>(c)].push_back(
                "cluster" + std::to_string(c) + "term" + std::to_string(w));
    std::vector<std::string> shared;
    for (int w = 0; w < spec.shared_vocab; ++w)
        shared.push_back("shared" + std::to_string(w));

    Rng rng(spec.seed);

    // edges first: one Bernoulli draw per unordered pair, row-major
    std::vector<std::vector<int>> out_refs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double p = cluster_of[static_cast<size_t>(i)] == cluster_of[static_cast<size_t>(j)]
                           ? spec.p_in
                           : spec.p_out;
            if (rng.next_double() >= p) continue;
            bool forward = rng.next_double() < 0.5; // i cites j
            int citing = forward ? i : j;
            int cited = forward ? j : i;
            out_refs[static_cast<size_t>(citing)].push_back(cited);
            truth.edges.emplace_back(node_id(citing), node_id(cited));
            ++truth.block_edges[static_cast<size_t>(cluster_of[static_cast<size_t>(citing)])]
                               [static_cast<size_t>(cluster_of[static_cast<size_t>(cited)])];
        }
    }

    // abstracts second, in node order
    std::vector<std::vector<std::string>> abstracts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& own = truth.planted_vocab[static_cast<size_t>(cluster_of[static_cast<size_t>(i)])];
        std::set<std::string> seen;
        for (int w = 0; w < spec.words_per_abstract; ++w) {
            bool from_cluster = rng.next_double() < 0.8;
            const std::vector<std::string>* pool = from_cluster ? &own : &shared;
            if (pool->empty()) pool = from_cluster ? &shared : &own;
            if (pool->empty()) break;
            const std::string& word = (*pool)[rng.next_below(pool->size())];
            abstracts[static_cast<size_t>(i)].push_back(word);
            seen.insert(word);
        }
        auto& counts = truth.term_doc_counts[static_cast<size_t>(cluster_of[static_cast<size_t>(i)])];
        for (const auto& w : seen) ++counts[w];
    }

    // records; all non-random fields derive from the node index
    result.records.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Record r;
        r.accession_id = node_id(i);
        truth.assignment[r.accession_id] = cluster_of[static_cast<size_t>(i)];
        r.authors = {"Auth" + std::to_string(i) + " A"};
        r.title = "Synthetic paper " + std::to_string(i);
        r.source = "J SYNTH RES";
        r.year = 2007 + i % 11;
        r.volume = std::to_string(1 + i / 100);
        r.start_page = std::to_string(1 + i % 997);
        std::string abs;
        for (size_t w = 0; w < abstracts[static_cast<size_t>(i)].size(); ++w) {
            if (w) abs += ' ';
            abs += abstracts[static_cast<size_t>(i)][w];
        }
        r.abstract = std::move(abs);
        result.records.push_back(std::move(r));
    }
    for (int i = 0; i < n; ++i)
        for (int cited : out_refs[static_cast<size_t>(i)])
            result.records[static_cast<size_t>(i)].cited_refs.push_back(
                render_reference(result.records[static_cast<size_t>(cited)]));

    result.corpus_text = render_export(result.records);
    return result;
}

namespace {

int64_t choose2(int64_t x) { return x * (x - 1) / 2; }

} // namespace

double adjusted_rand_index(const Partition& a, const Partition& b) {
    if (a.assignment.size() != b.assignment.size())
        throw DataError("adjusted_rand_index: partitions cover different node sets");

    std::map<std::pair<int, int>, int64_t> cells;
    std::map<int, int64_t> row_sums, col_sums;
    for (const auto& [node, ca] : a.assignment) {
        auto it = b.assignment.find(node);
        if (it == b.assignment.end())
            throw DataError("adjusted_rand_index: node '" + node + "' missing from second partition");
        ++cells[{ca, it->second}];
        ++row_sums[ca];
        ++col_sums[it->second];
    }

    const int64_t n = static_cast<int64_t>(a.assignment.size());
    int64_t sum_cells = 0, sum_rows = 0, sum_cols = 0;
    for (const auto& [rc, cnt] : cells) sum_cells += choose2(cnt);
    for (const auto& [r, cnt] : row_sums) sum_rows += choose2(cnt);
    for (const auto& [c, cnt] : col_sums) sum_cols += choose2(cnt);

    const double pairs = static_cast<double>(choose2(n));
    if (pairs == 0.0) return 1.0; // single node: identical by definition
    const double expected = static_cast<double>(sum_rows) * static_cast<double>(sum_cols) / pairs;
    const double maximum = 0.5 * static_cast<double>(sum_rows + sum_cols);
    if (maximum == expected) return 1.0; // both all-singletons or both one cluster
    return (static_cast<double>(sum_cells) - expected) / (maximum - expected);
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
    json j;
    j["assignment"] = truth.assignment;
    j["planted_vocab"] = truth.planted_vocab;
    j["block_edges"] = truth.block_edges;
    json edges = json::array();
    for (const auto& [citing, cited] : truth.edges)
        edges.push_back({citing, cited});
    j["edges"] = edges;
    json tdc = json::array();
    for (const auto& cluster : truth.term_doc_counts)
        tdc.push_back(cluster);
    j["term_doc_counts"] = tdc;
    out << j.dump(2) << '\n';
}

GroundTruth read_ground_truth(std::istream& in) {
    json j;
    in >> j;
    GroundTruth truth;
    truth.assignment = j.at("assignment").get<std::map<std::string, int>>();
    truth.planted_vocab = j.at("planted_vocab").get<std::vector<std::vector<std::string>>>();
    truth.block_edges = j.at("block_edges").get<std::vector<std::vector<int64_t>>>();
    for (const auto& e : j.at("edges"))
        truth.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    for (const auto& cluster : j.at("term_doc_counts"))
        truth.term_doc_counts.push_back(cluster.get<std::map<std::string, int64_t>>());
    return truth;
}

} // namespace fronts
