// Test-only oracles, kept independent of the implementation paths they
// check: exhaustive modularity search, direct chi-square computations, and
// set-materializing Jaccard.
#pragma once

#include "fronts/citation_graph.hpp"
#include "fronts/community.hpp"
#include "fronts/matrix.hpp"
#include "fronts/rng.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracles {

// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> set_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> labels(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int max_used) -> void {
        if (i == n) {
            out.push_back(labels);
            return;
        }
        for (int c = 0; c <= max_used + 1; ++c) {
            labels[static_cast<size_t>(i)] = c;
            self(self, i + 1, std::max(max_used, c));
        }
    };
    rec(rec, 0, -1);
    return out;
}

// Modularity evaluated straight from the definition on an explicit edge
// list (pair weights), no shared code with fronts::modularity.
inline double modularity_direct(const std::vector<std::tuple<int, int, long>>& edges,
                                const std::vector<int>& labels) {
    double m = 0;
    std::map<int, double> intra, deg;
    for (const auto& [a, b, w] : edges) {
        m += static_cast<double>(w);
        deg[labels[static_cast<size_t>(a)]] += static_cast<double>(w);
        deg[labels[static_cast<size_t>(b)]] += static_cast<double>(w);
        if (labels[static_cast<size_t>(a)] == labels[static_cast<size_t>(b)])
            intra[labels[static_cast<size_t>(a)]] += static_cast<double>(w);
    }
    double q = 0;
    for (const auto& [c, d] : deg) {
        double l = intra.count(c) ? intra[c] : 0.0;
        q += l / m - (d / (2 * m)) * (d / (2 * m));
    }
    return q;
}

struct ExhaustiveResult {
    double best_q;
    std::vector<int> best_labels;
    size_t partitions_tried;
};

inline ExhaustiveResult exhaustive_best_partition(
    int n, const std::vector<std::tuple<int, int, long>>& edges) {
    ExhaustiveResult res{-1e18, {}, 0};
    for (const auto& labels : set_partitions(n)) {
        ++res.partitions_tried;
        double q = modularity_direct(edges, labels);
        if (q > res.best_q) {
            res.best_q = q;
            res.best_labels = labels;
        }
    }
    return res;
}

// chi-square statistic of a contingency table.
inline double chi2_statistic(const fronts::Matrix& counts) {
    double n = 0;
    std::vector<double> rs(counts.rows(), 0), cs(counts.cols(), 0);
    for (size_t i = 0; i < counts.rows(); ++i)
        for (size_t j = 0; j < counts.cols(); ++j) {
            n += counts(i, j);
            rs[i] += counts(i, j);
            cs[j] += counts(i, j);
        }
    double chi2 = 0;
    for (size_t i = 0; i < counts.rows(); ++i)
        for (size_t j = 0; j < counts.cols(); ++j) {
            double expected = rs[i] * cs[j] / n;
            double d = counts(i, j) - expected;
            chi2 += d * d / expected;
        }
    return chi2;
}

// Pairwise chi-square distances between row profiles.
inline fronts::Matrix chi2_row_distances(const fronts::Matrix& counts) {
    double n = 0;
    std::vector<double> rs(counts.rows(), 0), cs(counts.cols(), 0);
    for (size_t i = 0; i < counts.rows(); ++i)
        for (size_t j = 0; j < counts.cols(); ++j) {
            n += counts(i, j);
            rs[i] += counts(i, j);
            cs[j] += counts(i, j);
        }
    fronts::Matrix d(counts.rows(), counts.rows());
    for (size_t a = 0; a < counts.rows(); ++a)
        for (size_t b = 0; b < counts.rows(); ++b) {
            double s = 0;
            for (size_t j = 0; j < counts.cols(); ++j) {
                double pa = counts(a, j) / rs[a];
                double pb = counts(b, j) / rs[b];
                s += (pa - pb) * (pa - pb) / (cs[j] / n);
            }
            d(a, b) = std::sqrt(s);
        }
    return d;
}

// Jaccard by materializing both document sets.
inline double jaccard_direct(const std::set<std::string>& term_docs,
                             const std::set<std::string>& front_docs) {
    std::set<std::string> inter, uni;
    for (const auto& d : term_docs)
        if (front_docs.count(d)) inter.insert(d);
    uni = term_docs;
    uni.insert(front_docs.begin(), front_docs.end());
    if (uni.empty()) return 0.0;
    return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

// Small random directed graph over ids "n0".."n{count-1}".
inline fronts::CitationGraph random_citation_graph(fronts::Rng& rng, int nodes, int edges) {
    fronts::CitationGraph g;
    for (int i = 0; i < nodes; ++i) g.add_node("n" + std::to_string(i));
    for (int e = 0; e < edges; ++e) {
        int a = static_cast<int>(rng.next_below(static_cast<uint64_t>(nodes)));
        int b = static_cast<int>(rng.next_below(static_cast<uint64_t>(nodes)));
        if (a != b) g.add_edge_idx(a, b);
    }
    return g;
}

// Hand-built undirected fixtures used across suites.
inline fronts::UndirectedGraph two_triangles() {
    fronts::UndirectedGraph g;
    for (int i = 0; i < 6; ++i) g.add_node("t" + std::to_string(i));
    g.add_weight(0, 1, 1);
    g.add_weight(1, 2, 1);
    g.add_weight(0, 2, 1);
    g.add_weight(3, 4, 1);
    g.add_weight(4, 5, 1);
    g.add_weight(3, 5, 1);
    return g;
}

inline fronts::UndirectedGraph two_triangles_bridge() {
    fronts::UndirectedGraph g = two_triangles();
    g.add_weight(2, 3, 1);
    return g;
}

inline std::vector<std::tuple<int, int, long>> edge_list(const fronts::UndirectedGraph& g) {
    std::vector<std::tuple<int, int, long>> edges;
    for (size_t i = 0; i < g.node_count(); ++i)
        for (const auto& [j, w] : g.neighbors(static_cast<int>(i)))
            if (j > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), j, w);
    return edges;
}

} // namespace oracles
