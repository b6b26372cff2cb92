// fronts: research-front detection in citation networks.
// Subcommands cover each pipeline stage plus an end-to-end mode; stages
// communicate through the interchange files described in docs/formats.md.

#include "fronts/citation_graph.hpp"
#include "fronts/community.hpp"
#include "fronts/correspondence.hpp"
#include "fronts/errors.hpp"
#include "fronts/export_parser.hpp"
#include "fronts/pipeline.hpp"
#include "fronts/report.hpp"
#include "fronts/strutil.hpp"
#include "fronts/synthgen.hpp"
#include "fronts/textmine.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace fronts;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const fs::path& path, const std::string& content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write file: " + path.string());
    out << content;
}

std::vector<Record> load_records(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open records file: " + path.string());
    return read_canonical(in);
}

CitationGraph load_graph(const fs::path& edges_path, const fs::path& nodes_path) {
    std::ifstream edges(edges_path, std::ios::binary);
    if (!edges)
        throw DataError("cannot open edge list: " + edges_path.string());
    CitationGraph g = read_edgelist(edges);
    if (!nodes_path.empty()) {
        std::ifstream nodes(nodes_path, std::ios::binary);
        if (!nodes)
            throw DataError("cannot open nodes table: " + nodes_path.string());
        read_nodes_table(nodes, g);
    }
    return g;
}

Partition load_partition(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open partition: " + path.string());
    return read_partition(in);
}

std::unordered_set<std::string> stopwords_from(const fs::path& path) {
    if (path.empty()) return default_stopwords();
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open stopword file: " + path.string());
    return load_stopwords(in);
}

// key=value lines; a value from the file applies only when the flag was not
// given on the command line, so precedence is flags > config > defaults.
void apply_config(CLI::App* cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open config file: " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + " has no '=': " + t);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        CLI::Option* op = cmd->get_option_no_throw("--" + key);
        if (op == nullptr)
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "' for subcommand " + cmd->get_name());
        if (op->count() > 0) continue;
        op->add_result(value);
        op->run_callback();
    }
}

TermIndex index_for_partition(const std::vector<Record>& records, const Partition& partition,
                              const fs::path& stopword_file, int64_t min_df,
                              bool strip_suffixes) {
    std::unordered_map<std::string, const Record*> by_id;
    for (const Record& r : records) by_id.emplace(r.accession_id, &r);
    std::vector<std::pair<std::string, std::string>> docs;
    docs.reserve(partition.assignment.size());
    for (const auto& [node, cluster] : partition.assignment) {
        (void)cluster;
        auto it = by_id.find(node);
        if (it == by_id.end())
            throw DataError("partition node missing from records: " + node);
        docs.emplace_back(node, it->second->abstract);
    }
    TokenizeOptions options;
    options.strip_suffixes = strip_suffixes;
    return build_index(docs, stopwords_from(stopword_file), min_df, options);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fronts: detect and characterize research fronts in a citation corpus"};
    app.require_subcommand(1);

    // shared option storage
    std::vector<std::string> inputs;
    std::string records_path, edges_path, nodes_path, core_path, core_nodes_path;
    std::string partition_path, contingency_path, out_dir = ".";
    std::string encoding = "utf8", stopword_file, note, format = "graphml";
    int64_t min_indegree = 6, min_front_size = 50, min_df = 2;
    double top_fraction = 0.2, resolution = 1.0;
    bool use_top_fraction = false, strip_suffixes = false, standard_coords = false;
    uint64_t seed = 1;
    int top_terms_k = 10, vocab_rule_top = 50;
    std::string clusters = "50,50,50,50";
    double p_in = 0.3, p_out = 0.01;
    int vocab_per_cluster = 30, shared_vocab = 20, words_per_abstract = 60;

    auto* cmd_ingest = app.add_subcommand("ingest", "parse export files to canonical records");
    cmd_ingest->add_option("-i,--input", inputs, "export file(s)")->required();
    cmd_ingest->add_option("-o,--out", out_dir, "output directory");
    cmd_ingest->add_option("--encoding", encoding, "utf8 | utf8-replace | latin1");

    auto* cmd_graph = app.add_subcommand("graph", "build the directed inter-citation network");
    cmd_graph->add_option("-r,--records", records_path, "records.jsonl")->required();
    cmd_graph->add_option("-o,--out", out_dir, "output directory");

    auto* cmd_core = app.add_subcommand("core", "extract the high-indegree core");
    cmd_core->add_option("-g,--graph", edges_path, "full graph edge list")->required();
    cmd_core->add_option("--nodes", nodes_path, "full graph nodes table");
    cmd_core->add_option("--min-indegree", min_indegree, "absolute indegree threshold");
    cmd_core->add_flag("--top-fraction-mode", use_top_fraction,
                       "choose the threshold from --top-fraction instead");
    cmd_core->add_option("--top-fraction", top_fraction, "kept fraction of most-cited nodes");
    cmd_core->add_option("-o,--out", out_dir, "output directory");

    auto* cmd_cluster = app.add_subcommand("cluster", "partition the core by modularity");
    cmd_cluster->add_option("-g,--graph", core_path, "core edge list")->required();
    cmd_cluster->add_option("--nodes", core_nodes_path, "core nodes table");
    cmd_cluster->add_option("--seed", seed, "shuffle seed");
    cmd_cluster->add_option("--resolution", resolution, "resolution parameter");
    cmd_cluster->add_option("-o,--out", out_dir, "output directory");

    auto* cmd_mine = app.add_subcommand("mine", "rank distinctive terms per front");
    cmd_mine->add_option("-r,--records", records_path, "records.jsonl")->required();
    cmd_mine->add_option("-p,--partition", partition_path, "partition.tsv")->required();
    cmd_mine->add_option("--min-front-size", min_front_size, "clusters below this are discarded");
    cmd_mine->add_option("--top-terms", top_terms_k, "terms per front");
    cmd_mine->add_option("--min-df", min_df, "minimum document frequency");
    cmd_mine->add_option("--vocab-top", vocab_rule_top, "per-front terms entering the CA table");
    cmd_mine->add_option("--stopwords", stopword_file, "stopword file (one word per line)");
    cmd_mine->add_flag("--strip-suffixes", strip_suffixes, "plain plural stripping");
    cmd_mine->add_option("-o,--out", out_dir, "output directory");

    auto* cmd_ca = app.add_subcommand("ca", "correspondence analysis of the contingency table");
    cmd_ca->add_option("-c,--contingency", contingency_path, "contingency.tsv")->required();
    cmd_ca->add_flag("--standard-coords", standard_coords, "export standard coordinates");
    cmd_ca->add_option("-o,--out", out_dir, "output directory");

    auto* cmd_report = app.add_subcommand("report", "per-front reports and graph exports");
    cmd_report->add_option("-r,--records", records_path, "records.jsonl")->required();
    cmd_report->add_option("-g,--graph", edges_path, "full graph edge list")->required();
    cmd_report->add_option("--nodes", nodes_path, "full graph nodes table");
    cmd_report->add_option("--core", core_path, "core edge list")->required();
    cmd_report->add_option("--core-nodes", core_nodes_path, "core nodes table");
    cmd_report->add_option("-p,--partition", partition_path, "partition.tsv")->required();
    cmd_report->add_option("--min-front-size", min_front_size, "clusters below this are discarded");
    cmd_report->add_option("--min-df", min_df, "minimum document frequency");
    cmd_report->add_option("--stopwords", stopword_file, "stopword file");
    cmd_report->add_flag("--strip-suffixes", strip_suffixes, "plain plural stripping");
    cmd_report->add_option("-o,--out", out_dir, "output directory");

    auto* cmd_synth = app.add_subcommand("synth", "generate a planted-partition corpus");
    cmd_synth->add_option("--clusters", clusters, "comma-separated cluster sizes");
    cmd_synth->add_option("--p-in", p_in, "intra-cluster edge probability");
    cmd_synth->add_option("--p-out", p_out, "inter-cluster edge probability");
    cmd_synth->add_option("--vocab", vocab_per_cluster, "planted words per cluster");
    cmd_synth->add_option("--shared", shared_vocab, "shared vocabulary size");
    cmd_synth->add_option("--words", words_per_abstract, "words per abstract");
    cmd_synth->add_option("--seed", seed, "generator seed");
    cmd_synth->add_option("-o,--out", out_dir, "output directory");

    auto* cmd_pipe = app.add_subcommand("pipeline", "run every stage end to end");
    cmd_pipe->add_option("-i,--input", inputs, "export file(s)")->required();
    cmd_pipe->add_option("-o,--out", out_dir, "output directory")->required();
    cmd_pipe->add_option("--encoding", encoding, "utf8 | utf8-replace | latin1");
    cmd_pipe->add_option("--min-indegree", min_indegree, "absolute indegree threshold");
    cmd_pipe->add_flag("--top-fraction-mode", use_top_fraction,
                       "choose the threshold from --top-fraction instead");
    cmd_pipe->add_option("--top-fraction", top_fraction, "kept fraction of most-cited nodes");
    cmd_pipe->add_option("--seed", seed, "clustering shuffle seed");
    cmd_pipe->add_option("--resolution", resolution, "resolution parameter");
    cmd_pipe->add_option("--min-front-size", min_front_size, "clusters below this are discarded");
    cmd_pipe->add_option("--top-terms", top_terms_k, "terms per front");
    cmd_pipe->add_option("--min-df", min_df, "minimum document frequency");
    cmd_pipe->add_option("--vocab-top", vocab_rule_top, "per-front terms entering the CA table");
    cmd_pipe->add_option("--stopwords", stopword_file, "stopword file");
    cmd_pipe->add_flag("--strip-suffixes", strip_suffixes, "plain plural stripping");
    cmd_pipe->add_flag("--standard-coords", standard_coords, "export standard CA coordinates");
    bool no_graphml = false, no_dot = false, no_edgelist = false;
    cmd_pipe->add_flag("--no-graphml", no_graphml, "skip graphml exports");
    cmd_pipe->add_flag("--no-dot", no_dot, "skip dot exports");
    cmd_pipe->add_flag("--no-edgelist", no_edgelist, "skip edge-list exports");
    cmd_pipe->add_option("--note", note, "provenance note echoed into the manifest");

    // flags > config file > defaults, for every subcommand
    std::string config_file;
    std::vector<CLI::App*> commands = {cmd_ingest, cmd_graph,  cmd_core,  cmd_cluster, cmd_mine,
                                       cmd_ca,     cmd_report, cmd_synth, cmd_pipe};
    for (auto* cmd : commands)
        cmd->add_option("--config", config_file, "config file with key=value lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!config_file.empty())
            for (auto* cmd : commands)
                if (cmd->parsed()) apply_config(cmd, config_file);

        fs::path out(out_dir);

        if (cmd_ingest->parsed()) {
            EncodingPolicy policy = parse_encoding_policy(encoding);
            std::vector<Record> records;
            for (const auto& in : inputs) {
                ParsedCorpus corpus = parse_export_file(in, policy);
                for (auto& r : corpus.records) records.push_back(std::move(r));
            }
            DedupeResult deduped = dedupe(std::move(records));
            std::ostringstream buf;
            write_canonical(buf, deduped.records);
            spill(out / "records.jsonl", buf.str());
            std::cerr << "records: " << deduped.records.size() << " (duplicates removed: "
                      << deduped.removed << ")\n";
        } else if (cmd_graph->parsed()) {
            std::vector<Record> records = load_records(records_path);
            BuildResult built = build_graph(records);
            std::ostringstream edges, nodes;
            write_edgelist(edges, built.graph);
            write_nodes_table(nodes, built.graph);
            spill(out / "graph_full.edgelist", edges.str());
            spill(out / "graph_full.nodes.tsv", nodes.str());
            std::cerr << "nodes: " << built.graph.node_count() << ", edges: "
                      << built.graph.edge_count() << ", matched refs: " << built.report.matched
                      << ", unmatched refs: " << built.report.unmatched << "\n";
        } else if (cmd_core->parsed()) {
            CitationGraph full = load_graph(edges_path, nodes_path);
            int64_t threshold = min_indegree;
            if (use_top_fraction) threshold = threshold_for_top_fraction(full, top_fraction);
            CitationGraph core = extract_core(full, threshold);
            std::ostringstream edges, nodes;
            write_edgelist(edges, core);
            write_nodes_table(nodes, core);
            spill(out / "core.edgelist", edges.str());
            spill(out / "core.nodes.tsv", nodes.str());
            std::cerr << "threshold: " << threshold << ", core nodes: " << core.node_count()
                      << ", core edges: " << core.edge_count() << ", citation share: "
                      << fmt_fixed(citation_share(full, core), 6) << "\n";
        } else if (cmd_cluster->parsed()) {
            CitationGraph core = load_graph(core_path, core_nodes_path);
            UndirectedGraph projected = symmetrize(core);
            Partition partition = louvain(projected, seed, resolution);
            std::ostringstream buf;
            write_partition(buf, partition);
            spill(out / "partition.tsv", buf.str());
            std::cerr << "clusters: " << partition.cluster_count();
            if (projected.total_weight() > 0)
                std::cerr << ", modularity: " << fmt_fixed(modularity(projected, partition), 6);
            std::cerr << "\n";
        } else if (cmd_mine->parsed()) {
            std::vector<Record> records = load_records(records_path);
            Partition partition = load_partition(partition_path);
            TermIndex index =
                index_for_partition(records, partition, stopword_file, min_df, strip_suffixes);
            FrontSet fronts = make_fronts(partition, min_front_size);
            std::string table = "front_rank\tterm\tjaccard\tdf_in_front\tdf_total\n";
            for (size_t f = 0; f < fronts.fronts.size(); ++f)
                for (const TermScore& s : top_terms(fronts.fronts[f], index, top_terms_k))
                    table += std::to_string(f + 1) + "\t" + s.term + "\t" +
                             fmt_fixed(s.jaccard, 6) + "\t" + std::to_string(s.df_in_front) +
                             "\t" + std::to_string(s.df_total) + "\n";
            spill(out / "term_tables.tsv", table);
            if (fronts.fronts.size() >= 2) {
                Contingency ct = contingency(fronts, index, vocab_rule_top);
                std::ostringstream buf;
                write_contingency(buf, ct);
                spill(out / "contingency.tsv", buf.str());
            } else {
                std::cerr << "fewer than 2 fronts: contingency.tsv not written\n";
            }
            std::cerr << "fronts: " << fronts.fronts.size() << ", discarded: "
                      << fronts.discarded.size() << "\n";
        } else if (cmd_ca->parsed()) {
            std::ifstream in(contingency_path, std::ios::binary);
            if (!in)
                throw DataError("cannot open contingency table: " + contingency_path);
            Contingency table = read_contingency(in);
            Matrix m(table.counts.size(), table.terms.size());
            for (size_t i = 0; i < table.counts.size(); ++i)
                for (size_t j = 0; j < table.terms.size(); ++j)
                    m(i, j) = static_cast<double>(table.counts[i][j]);
            CaModel model = correspondence_analysis(m);
            if (model.dimensions() == 0)
                throw NumericError("contingency table is exactly independent; nothing to plot");
            std::vector<std::string> row_labels;
            for (size_t f = 0; f < table.counts.size(); ++f)
                row_labels.push_back("F" + std::to_string(f + 1));
            spill(out / "ca_coords.tsv",
                  export_ca_coords(model, row_labels, table.terms, standard_coords));
            spill(out / "ca_plot.svg", render_ca_plot(project_2d(model), row_labels, table.terms));
            std::cerr << "dimensions: " << model.dimensions() << ", total inertia: "
                      << fmt_fixed(model.total_inertia, 6) << "\n";
        } else if (cmd_report->parsed()) {
            std::vector<Record> records = load_records(records_path);
            CitationGraph full = load_graph(edges_path, nodes_path);
            CitationGraph core = load_graph(core_path, core_nodes_path);
            Partition partition = load_partition(partition_path);
            TermIndex index =
                index_for_partition(records, partition, stopword_file, min_df, strip_suffixes);
            FrontSet fronts = make_fronts(partition, min_front_size);
            std::map<std::string, Record> by_id;
            for (const Record& r : records) by_id.emplace(r.accession_id, r);
            std::vector<FrontReport> reports;
            for (size_t f = 0; f < fronts.fronts.size(); ++f)
                reports.push_back(build_report(fronts.fronts[f], static_cast<int>(f + 1), core,
                                               full, index, &by_id));
            spill(out / "front_reports.tsv", export_tables(reports));
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
            spill(out / "front_interactions.tsv", matrix);
            spill(out / "front_interactions.dot", export_front_graph(fg, GraphFormat::Dot));
            spill(out / "core.graphml", export_graph(core, &partition, GraphFormat::Graphml));
            spill(out / "core.dot", export_graph(core, &partition, GraphFormat::Dot));
            std::cerr << "reports: " << reports.size() << "\n";
        } else if (cmd_synth->parsed()) {
            SynthSpec spec;
            spec.cluster_sizes.clear();
            for (const auto& part : split(clusters, ',')) {
                if (trim(part).empty()) continue;
                spec.cluster_sizes.push_back(std::stoi(trim(part)));
            }
            spec.p_in = p_in;
            spec.p_out = p_out;
            spec.vocab_per_cluster = vocab_per_cluster;
            spec.shared_vocab = shared_vocab;
            spec.words_per_abstract = words_per_abstract;
            spec.seed = seed;
            SynthResult synth = generate(spec);
            spill(out / "corpus.txt", synth.corpus_text);
            std::ostringstream truth;
            write_ground_truth(truth, synth.truth);
            spill(out / "ground_truth.json", truth.str());
            std::cerr << "records: " << synth.records.size() << ", edges: "
                      << synth.truth.total_edges() << "\n";
        } else if (cmd_pipe->parsed()) {
            PipelineConfig config;
            for (const auto& in : inputs) config.inputs.emplace_back(in);
            config.out_dir = out;
            config.encoding = parse_encoding_policy(encoding);
            config.min_indegree = min_indegree;
            config.use_top_fraction = use_top_fraction;
            config.top_fraction = top_fraction;
            config.seed = seed;
            config.resolution = resolution;
            config.min_front_size = min_front_size;
            config.top_terms_k = top_terms_k;
            config.min_df = min_df;
            config.vocab_rule_top = vocab_rule_top;
            if (!stopword_file.empty()) config.stopword_file = stopword_file;
            config.strip_suffixes = strip_suffixes;
            config.standard_coords = standard_coords;
            config.export_graphml = !no_graphml;
            config.export_dot = !no_dot;
            config.export_edgelist = !no_edgelist;
            config.note = note;
            PipelineResult result = run_pipeline(config);
            std::cerr << "records: " << result.counts.records << ", edges: "
                      << result.counts.edges << ", core: " << result.counts.core_nodes
                      << " nodes / " << result.counts.core_edges << " edges, clusters: "
                      << result.counts.cluster_count << " (" << result.counts.front_count
                      << " fronts, " << result.counts.discarded_count << " discarded)\n";
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
