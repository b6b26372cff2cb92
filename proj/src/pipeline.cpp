#include "fronts/pipeline.hpp"

#include "fronts/citation_graph.hpp"
#include "fronts/community.hpp"
#include "fronts/correspondence.hpp"
#include "fronts/errors.hpp"
#include "fronts/report.hpp"
#include "fronts/strutil.hpp"
#include "fronts/textmine.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace fronts {

namespace {

template <typename Fn>
auto run_stage(const std::string& name, std::vector<std::pair<std::string, int64_t>>& timings,
               Fn&& fn) {
    auto started = std::chrono::steady_clock::now();
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
            timings.emplace_back(name, ms);
            return;
        } else {
            auto result = fn();
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
            timings.emplace_back(name, ms);
            return result;
        }
    } catch (const UsageError& e) {
        throw UsageError(name + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(name + ": " + e.what());
    } catch (const NumericError& e) {
        throw NumericError(name + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError(name + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& content, std::vector<std::string>& artifacts) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + (dir / name).string());
    out << content;
    artifacts.push_back(name);
}

const char* encoding_name(EncodingPolicy p) {
    switch (p) {
    case EncodingPolicy::Utf8Strict: return "utf8";
    case EncodingPolicy::Utf8Replace: return "utf8-replace";
    case EncodingPolicy::Latin1: return "latin1";
    }
    return "utf8";
}

} // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    if (config.inputs.empty())
        throw UsageError("pipeline: no input files given");
    if (config.out_dir.empty())
        throw UsageError("pipeline: no output directory given");
    std::filesystem::create_directories(config.out_dir);

    PipelineResult result;
    std::vector<std::pair<std::string, int64_t>> timings;
    std::vector<std::string>& artifacts = result.artifacts;
    PipelineCounts& counts = result.counts;

    // ingest
    std::string input_digest;
    std::vector<Record> records = run_stage("ingest", timings, [&] {
        std::string all_bytes;
        std::vector<Record> recs;
        for (const auto& path : config.inputs) {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw DataError("cannot open input file: " + path.string());
            std::ostringstream buf;
            buf << in.rdbuf();
            std::string bytes = buf.str();
            all_bytes += bytes;
            ParsedCorpus corpus = parse_export(std::string_view(bytes), config.encoding);
            for (auto& r : corpus.records) recs.push_back(std::move(r));
        }
        input_digest = fnv1a_hex(all_bytes);
        DedupeResult deduped = dedupe(std::move(recs));
        counts.duplicates_removed = static_cast<int64_t>(deduped.removed);
        if (deduped.records.empty())
            throw DataError("no records parsed from input");
        counts.records = static_cast<int64_t>(deduped.records.size());
        std::ostringstream out;
        write_canonical(out, deduped.records);
        write_file(config.out_dir, "records.jsonl", out.str(), artifacts);
        return deduped.records;
    });

    // graph
    BuildResult built = run_stage("graph", timings, [&] {
        BuildResult b = build_graph(records);
        counts.edges = b.graph.edge_count();
        counts.matched_refs = b.report.matched;
        counts.unmatched_refs = b.report.unmatched;
        if (config.export_edgelist) {
            std::ostringstream edges;
            write_edgelist(edges, b.graph);
            write_file(config.out_dir, "graph_full.edgelist", edges.str(), artifacts);
        }
        std::ostringstream nodes;
        write_nodes_table(nodes, b.graph);
        write_file(config.out_dir, "graph_full.nodes.tsv", nodes.str(), artifacts);
        return b;
    });
    const CitationGraph& full = built.graph;

    // core
    int64_t threshold = config.min_indegree;
    CitationGraph core = run_stage("core", timings, [&] {
        if (config.use_top_fraction)
            threshold = threshold_for_top_fraction(full, config.top_fraction);
        CitationGraph c = extract_core(full, threshold);
        counts.core_nodes = static_cast<int64_t>(c.node_count());
        counts.core_edges = c.edge_count();
        counts.citation_share = citation_share(full, c);
        if (c.node_count() == 0)
            throw DataError("core is empty at indegree threshold " + std::to_string(threshold));
        if (config.export_edgelist) {
            std::ostringstream edges;
            write_edgelist(edges, c);
            write_file(config.out_dir, "core.edgelist", edges.str(), artifacts);
        }
        std::ostringstream nodes;
        write_nodes_table(nodes, c);
        write_file(config.out_dir, "core.nodes.tsv", nodes.str(), artifacts);
        return c;
    });

    // cluster
    UndirectedGraph projected = symmetrize(core);
    Partition partition = run_stage("cluster", timings, [&] {
        Partition p = louvain(projected, config.seed, config.resolution);
        counts.cluster_count = p.cluster_count();
        if (projected.total_weight() > 0)
            counts.modularity = modularity(projected, p);
        std::ostringstream out;
        write_partition(out, p);
        write_file(config.out_dir, "partition.tsv", out.str(), artifacts);
        return p;
    });

    FrontSet fronts = make_fronts(partition, config.min_front_size);
    counts.front_count = static_cast<int64_t>(fronts.fronts.size());
    counts.discarded_count = static_cast<int64_t>(fronts.discarded.size());

    // mine
    TermIndex index = run_stage("mine", timings, [&] {
        std::unordered_set<std::string> stopwords;
        if (config.stopword_file.empty()) {
            stopwords = default_stopwords();
        } else {
            std::ifstream in(config.stopword_file);
            if (!in)
                throw DataError("cannot open stopword file: " + config.stopword_file.string());
            stopwords = load_stopwords(in);
        }
        TokenizeOptions options;
        options.strip_suffixes = config.strip_suffixes;
        std::vector<std::pair<std::string, std::string>> docs;
        docs.reserve(core.node_count());
        std::unordered_map<std::string, const Record*> by_id;
        for (const Record& r : records) by_id.emplace(r.accession_id, &r);
        for (size_t i = 0; i < core.node_count(); ++i) {
            const std::string& id = core.id(static_cast<int>(i));
            docs.emplace_back(id, by_id.at(id)->abstract);
        }
        TermIndex idx = build_index(docs, stopwords, config.min_df, options);

        std::string table = "front_rank\tterm\tjaccard\tdf_in_front\tdf_total\n";
        for (size_t f = 0; f < fronts.fronts.size(); ++f)
            for (const TermScore& s : top_terms(fronts.fronts[f], idx, config.top_terms_k))
                table += std::to_string(f + 1) + "\t" + s.term + "\t" + fmt_fixed(s.jaccard, 6) +
                         "\t" + std::to_string(s.df_in_front) + "\t" +
                         std::to_string(s.df_total) + "\n";
        write_file(config.out_dir, "term_tables.tsv", table, artifacts);
        return idx;
    });

    // ca (needs >= 2 fronts; single-front corpora skip the plot but keep going)
    bool ca_done = false;
    if (fronts.fronts.size() >= 2) {
        run_stage("ca", timings, [&] {
            Contingency table = contingency(fronts, index, config.vocab_rule_top);
            std::ostringstream ct;
            write_contingency(ct, table);
            write_file(config.out_dir, "contingency.tsv", ct.str(), artifacts);

            Matrix m(table.counts.size(), table.terms.size());
            for (size_t i = 0; i < table.counts.size(); ++i)
                for (size_t j = 0; j < table.terms.size(); ++j)
                    m(i, j) = static_cast<double>(table.counts[i][j]);
            CaModel model = correspondence_analysis(m);
            if (model.dimensions() == 0)
                return; // perfectly independent table: nothing to plot
            std::vector<std::string> row_labels;
            for (size_t f = 0; f < fronts.fronts.size(); ++f)
                row_labels.push_back("F" + std::to_string(f + 1));
            write_file(config.out_dir, "ca_coords.tsv",
                       export_ca_coords(model, row_labels, table.terms, config.standard_coords),
                       artifacts);
            CaProjection proj = project_2d(model);
            write_file(config.out_dir, "ca_plot.svg",
                       render_ca_plot(proj, row_labels, table.terms), artifacts);
            ca_done = true;
        });
    }

    // report
    run_stage("report", timings, [&] {
        std::map<std::string, Record> by_id;
        for (const Record& r : records) by_id.emplace(r.accession_id, r);
        std::vector<FrontReport> reports;
        for (size_t f = 0; f < fronts.fronts.size(); ++f)
            reports.push_back(build_report(fronts.fronts[f], static_cast<int>(f + 1), core, full,
                                           index, &by_id));
        write_file(config.out_dir, "front_reports.tsv", export_tables(reports), artifacts);

        FrontGraph fg = front_interactions(core, fronts);
        std::string matrix = "front";
        for (size_t j = 0; j < fg.front_count; ++j) matrix += "\tF" + std::to_string(j + 1);
        matrix += "\n";
        for (size_t i = 0; i < fg.front_count; ++i) {
            matrix += "F" + std::to_string(i + 1);
            for (size_t j = 0; j < fg.front_count; ++j)
                matrix += "\t" + std::to_string(fg.weight[i][j]);
            matrix += "\n";
        }
        write_file(config.out_dir, "front_interactions.tsv", matrix, artifacts);
        if (config.export_dot)
            write_file(config.out_dir, "front_interactions.dot",
                       export_front_graph(fg, GraphFormat::Dot), artifacts);

        if (config.export_graphml)
            write_file(config.out_dir, "core.graphml",
                       export_graph(core, &partition, GraphFormat::Graphml), artifacts);
        if (config.export_dot)
            write_file(config.out_dir, "core.dot", export_graph(core, &partition, GraphFormat::Dot),
                       artifacts);
    });

    // manifest
    json manifest;
    manifest["config"] = {
        {"inputs", [&] {
             std::vector<std::string> v;
             for (const auto& p : config.inputs) v.push_back(p.string());
             return v;
         }()},
        {"encoding", encoding_name(config.encoding)},
        {"min_indegree", config.min_indegree},
        {"use_top_fraction", config.use_top_fraction},
        {"top_fraction", config.top_fraction},
        {"effective_threshold", threshold},
        {"seed", config.seed},
        {"resolution", config.resolution},
        {"min_front_size", config.min_front_size},
        {"top_terms_k", config.top_terms_k},
        {"min_df", config.min_df},
        {"vocab_rule_top", config.vocab_rule_top},
        {"stopword_file", config.stopword_file.string()},
        {"strip_suffixes", config.strip_suffixes},
        {"standard_coords", config.standard_coords},
        {"note", config.note},
    };
    manifest["input_digest"] = input_digest;
    manifest["counts"] = {
        {"records", counts.records},
        {"duplicates_removed", counts.duplicates_removed},
        {"edges", counts.edges},
        {"matched_refs", counts.matched_refs},
        {"unmatched_refs", counts.unmatched_refs},
        {"core_nodes", counts.core_nodes},
        {"core_edges", counts.core_edges},
        {"citation_share", counts.citation_share},
        {"cluster_count", counts.cluster_count},
        {"front_count", counts.front_count},
        {"discarded_count", counts.discarded_count},
        {"modularity", counts.modularity},
    };
    manifest["ca_computed"] = ca_done;
    manifest["artifacts"] = artifacts;
    json stage_times = json::array();
    for (const auto& [name, ms] : timings)
        stage_times.push_back({{"stage", name}, {"millis", ms}});
    manifest["timings"] = stage_times;
    {
        std::ofstream out(config.out_dir / "manifest.json", std::ios::binary);
        if (!out)
            throw DataError("cannot write manifest.json");
        out << manifest.dump(2) << '\n';
    }
    result.artifacts.push_back("manifest.json");
    return result;
}

} // namespace fronts
