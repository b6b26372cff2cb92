#pragma once

#include "fronts/community.hpp"
#include "fronts/record.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fronts {

// Parameters of a planted-partition corpus: block-model citation edges plus
// per-cluster vocabularies mixed 80/20 with a shared pool.
struct SynthSpec {
    std::vector<int> cluster_sizes;
    double p_in = 0.3;
    double p_out = 0.01;
    int vocab_per_cluster = 30;
    int shared_vocab = 20;
    int words_per_abstract = 60;
    uint64_t seed = 1;
};

struct GroundTruth {
    std::map<std::string, int> assignment;                    // node -> planted cluster
    std::vector<std::vector<std::string>> planted_vocab;      // per cluster
    std::vector<std::vector<int64_t>> block_edges;            // directed counts, from x to
    std::vector<std::pair<std::string, std::string>> edges;   // exact directed edge list
    // per cluster: word -> number of cluster documents containing it
    std::vector<std::map<std::string, int64_t>> term_doc_counts;

    int64_t total_edges() const;
    int64_t pair_edges(int a, int b) const; // either direction
};

struct SynthResult {
    std::vector<Record> records;
    std::string corpus_text; // records rendered in the export format
    GroundTruth truth;
};

// Deterministic for a given spec. Draw order (single stream, see
// docs/formats.md): for every node pair (i,j), i<j, row-major, one uniform
// draw decides the edge and, when the edge exists, one more draw picks its
// direction; then for every record in node order, words_per_abstract
// iterations each draw a pool selector (< 0.8 = cluster vocabulary) and an
// index into the chosen pool.
SynthResult generate(const SynthSpec& spec);

// Chance-corrected pair-counting agreement; 1 for identical partitions.
// Throws DataError when the partitions cover different node sets.
double adjusted_rand_index(const Partition& a, const Partition& b);

void write_ground_truth(std::ostream& out, const GroundTruth& truth);
GroundTruth read_ground_truth(std::istream& in);

} // namespace fronts
