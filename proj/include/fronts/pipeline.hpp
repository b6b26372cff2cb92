#pragma once

#include "fronts/export_parser.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fronts {

struct PipelineConfig {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out_dir;

    EncodingPolicy encoding = EncodingPolicy::Utf8Strict;
    int64_t min_indegree = 6;
    bool use_top_fraction = false;
    double top_fraction = 0.2;
    uint64_t seed = 1;
    double resolution = 1.0;
    int64_t min_front_size = 50;
    int top_terms_k = 10;
    int64_t min_df = 2;
    int vocab_rule_top = 50;
    std::filesystem::path stopword_file; // empty = embedded list
    bool strip_suffixes = false;
    bool standard_coords = false;
    bool export_graphml = true;
    bool export_dot = true;
    bool export_edgelist = true;
    std::string note; // provenance, e.g. the original query string
};

struct PipelineCounts {
    int64_t records = 0;
    int64_t duplicates_removed = 0;
    int64_t edges = 0;
    int64_t matched_refs = 0;
    int64_t unmatched_refs = 0;
    int64_t core_nodes = 0;
    int64_t core_edges = 0;
    double citation_share = 0.0;
    int64_t cluster_count = 0;
    int64_t front_count = 0;
    int64_t discarded_count = 0;
    double modularity = 0.0;
};

struct PipelineResult {
    PipelineCounts counts;
    std::vector<std::string> artifacts; // file names relative to out_dir
};

// Runs ingest -> graph -> core -> cluster -> mine -> ca -> report, writing
// every artifact plus manifest.json into out_dir. Errors carry the failing
// stage name; artifacts of completed stages stay on disk.
PipelineResult run_pipeline(const PipelineConfig& config);

} // namespace fronts
