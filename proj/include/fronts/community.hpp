#pragma once

#include "fronts/citation_graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace fronts {

// Node -> cluster id. Cluster ids are dense and 0-based.
struct Partition {
    std::map<std::string, int> assignment;

    int cluster_count() const;
    bool operator==(const Partition&) const = default;
};

// Newman modularity Q = sum_c [ l_c/m - (d_c/2m)^2 ] on the weighted
// undirected graph. Throws on an empty graph or when the partition does not
// cover exactly the graph's nodes.
double modularity(const UndirectedGraph& graph, const Partition& partition);

// Greedy modularity maximization with graph coarsening. Deterministic for a
// given (graph, seed, resolution): node visit order is a seeded shuffle and
// ties in gain break toward the lowest community id. Only strictly positive
// gains are accepted, so the result never scores below the singleton
// partition.
Partition louvain(const UndirectedGraph& graph, uint64_t seed, double resolution = 1.0);

// Ranked, size-filtered clusters. Fronts sort by descending size, ties by
// smallest member id; members are sorted ascending.
struct FrontSet {
    std::vector<std::vector<std::string>> fronts;
    std::vector<std::vector<std::string>> discarded;
    int64_t min_size = 0;

    size_t total_nodes() const;
};

FrontSet make_fronts(const Partition& partition, int64_t min_size);

// Display pruning for the front-interaction graph: edges below
// fraction_of_max of the heaviest weight drop, but each front keeps its
// heaviest incident edge.
struct KeepRule {
    double fraction_of_max = 0.10;
    bool keep_heaviest_per_front = true;
};

struct FrontGraph {
    size_t front_count = 0;
    std::vector<std::vector<int64_t>> weight; // symmetric, zero diagonal
    std::vector<std::tuple<int, int, int64_t>> kept; // pruned edge list (i < j)
};

// weight(i,j) = directed edges between fronts i and j in either direction.
FrontGraph front_interactions(const CitationGraph& directed, const FrontSet& fronts,
                              const KeepRule& rule = {});

// "node<TAB>cluster_id" lines, sorted by node id.
void write_partition(std::ostream& out, const Partition& partition);
Partition read_partition(std::istream& in);

} // namespace fronts
