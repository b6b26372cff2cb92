#include "fronts/community.hpp"

#include "fronts/errors.hpp"
#include "fronts/rng.hpp"
#include "fronts/strutil.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace fronts {

int Partition::cluster_count() const {
    int max_id = -1;
    for (const auto& [node, c] : assignment)
        max_id = std::max(max_id, c);
    return max_id + 1;
}

double modularity(const UndirectedGraph& graph, const Partition& partition) {
    if (graph.total_weight() == 0)
        throw NumericError("modularity undefined: graph has no edges");
    if (partition.assignment.size() != graph.node_count())
        throw DataError("partition does not cover exactly the graph's nodes");

    std::vector<int> cluster_of(graph.node_count());
    int max_cluster = -1;
    for (size_t i = 0; i < graph.node_count(); ++i) {
        auto it = partition.assignment.find(graph.id(static_cast<int>(i)));
        if (it == partition.assignment.end())
            throw DataError("partition is missing node " + graph.id(static_cast<int>(i)));
        cluster_of[i] = it->second;
        max_cluster = std::max(max_cluster, it->second);
    }

    const double m = static_cast<double>(graph.total_weight());
    std::vector<int64_t> intra(static_cast<size_t>(max_cluster) + 1, 0);
    std::vector<int64_t> deg(static_cast<size_t>(max_cluster) + 1, 0);
    for (size_t i = 0; i < graph.node_count(); ++i) {
        int ci = cluster_of[i];
        for (const auto& [j, w] : graph.neighbors(static_cast<int>(i))) {
            deg[static_cast<size_t>(ci)] += w;
            if (cluster_of[static_cast<size_t>(j)] == ci && j > static_cast<int>(i))
                intra[static_cast<size_t>(ci)] += w;
        }
    }

    double q = 0.0;
    for (size_t c = 0; c < intra.size(); ++c) {
        double frac = static_cast<double>(intra[c]) / m;
        double dc = static_cast<double>(deg[c]) / (2.0 * m);
        q += frac - dc * dc;
    }
    return q;
}

namespace {

// Working graph for one coarsening level. Unlike the public UndirectedGraph
// it allows self-loops, which carry the intra-community weight of collapsed
// nodes. Self-loop weight counts twice in a node's degree.
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adj; // no self entries
    std::vector<double> self_loop;
    std::vector<double> degree; // weighted, self-loops doubled
    double total_weight = 0;    // each off-diagonal edge once + self-loops

    size_t size() const { return adj.size(); }
};

struct LocalMoveResult {
    std::vector<int> community; // node -> community id (dense, renumbered)
    int community_count = 0;
    bool changed = false;
};

LocalMoveResult local_moves(const LevelGraph& g, double resolution, Rng& rng) {
    const size_t n = g.size();
    LocalMoveResult res;
    res.community.resize(n);
    for (size_t i = 0; i < n; ++i) res.community[i] = static_cast<int>(i);

    std::vector<double> community_degree(g.degree);
    const double m = g.total_weight;
    const double two_m_sq = 2.0 * m * m;

    std::vector<int> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);

    // affinity scratch: weight from the current node to each community
    std::vector<double> affinity(n, 0.0);
    std::vector<int> touched;

    bool moved_any_pass = true;
    while (moved_any_pass) {
        moved_any_pass = false;
        for (int u : order) {
            const int cu = res.community[static_cast<size_t>(u)];
            touched.clear();
            for (const auto& [v, w] : g.adj[static_cast<size_t>(u)]) {
                int cv = res.community[static_cast<size_t>(v)];
                if (affinity[static_cast<size_t>(cv)] == 0.0) touched.push_back(cv);
                affinity[static_cast<size_t>(cv)] += w;
            }
            const double ku = g.degree[static_cast<size_t>(u)];
            const double aff_own = affinity[static_cast<size_t>(cu)];
            const double deg_own_without = community_degree[static_cast<size_t>(cu)] - ku;

            // gain of moving u from its community to community c:
            //   (aff_c - aff_own)/m - resolution * ku*(deg_c - deg_own_without)/(2 m^2)
            int best = cu;
            double best_gain = 0.0;
            for (int c : touched) {
                if (c == cu) continue;
                double gain =
                    (affinity[static_cast<size_t>(c)] - aff_own) / m -
                    resolution * ku *
                        (community_degree[static_cast<size_t>(c)] - deg_own_without) / two_m_sq;
                if (gain > 0.0 && (gain > best_gain || (gain == best_gain && c < best))) {
                    best = c;
                    best_gain = gain;
                }
            }
            for (int c : touched) affinity[static_cast<size_t>(c)] = 0.0;

            if (best != cu) {
                community_degree[static_cast<size_t>(cu)] -= ku;
                community_degree[static_cast<size_t>(best)] += ku;
                res.community[static_cast<size_t>(u)] = best;
                res.changed = true;
                moved_any_pass = true;
            }
        }
    }

    // renumber to dense ids, ordered by lowest member node index
    std::vector<int> remap(n, -1);
    int next = 0;
    for (size_t i = 0; i < n; ++i) {
        int& slot = remap[static_cast<size_t>(res.community[i])];
        if (slot < 0) slot = next++;
        res.community[i] = remap[static_cast<size_t>(res.community[i])];
    }
    res.community_count = next;
    return res;
}

LevelGraph coarsen(const LevelGraph& g, const std::vector<int>& community, int community_count) {
    LevelGraph c;
    c.adj.resize(static_cast<size_t>(community_count));
    c.self_loop.assign(static_cast<size_t>(community_count), 0.0);
    c.degree.assign(static_cast<size_t>(community_count), 0.0);
    c.total_weight = g.total_weight;

    std::unordered_map<uint64_t, double> agg;
    for (size_t u = 0; u < g.size(); ++u) {
        int cu = community[u];
        c.self_loop[static_cast<size_t>(cu)] += g.self_loop[u];
        for (const auto& [v, w] : g.adj[u]) {
            if (static_cast<size_t>(v) < u) continue; // count each pair once
            int cv = community[static_cast<size_t>(v)];
            if (cu == cv) {
                c.self_loop[static_cast<size_t>(cu)] += w;
            } else {
                int a = std::min(cu, cv), b = std::max(cu, cv);
                agg[(static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
                    static_cast<uint32_t>(b)] += w;
            }
        }
    }
    for (const auto& [key, w] : agg) {
        int a = static_cast<int>(key >> 32);
        int b = static_cast<int>(key & 0xffffffffu);
        c.adj[static_cast<size_t>(a)].push_back({b, w});
        c.adj[static_cast<size_t>(b)].push_back({a, w});
    }
    // deterministic neighbor order regardless of hash-map iteration
    for (auto& nbrs : c.adj)
        std::sort(nbrs.begin(), nbrs.end());
    for (size_t i = 0; i < c.size(); ++i) {
        double d = 2.0 * c.self_loop[i];
        for (const auto& [v, w] : c.adj[i]) {
            (void)v;
            d += w;
        }
        c.degree[i] = d;
    }
    return c;
}

} // namespace

Partition louvain(const UndirectedGraph& graph, uint64_t seed, double resolution) {
    if (graph.node_count() == 0)
        throw DataError("louvain requires at least one node");

    const size_t n = graph.node_count();
    std::vector<int> assignment(n);
    for (size_t i = 0; i < n; ++i) assignment[i] = static_cast<int>(i);

    LevelGraph level;
    level.adj.resize(n);
    level.self_loop.assign(n, 0.0);
    level.degree.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (const auto& [j, w] : graph.neighbors(static_cast<int>(i)))
            level.adj[i].push_back({j, static_cast<double>(w)});
        std::sort(level.adj[i].begin(), level.adj[i].end());
        level.degree[i] = static_cast<double>(graph.degree(static_cast<int>(i)));
    }
    level.total_weight = static_cast<double>(graph.total_weight());

    Rng rng(seed);
    if (level.total_weight > 0) {
        for (;;) {
            LocalMoveResult moves = local_moves(level, resolution, rng);
            for (auto& a : assignment) a = moves.community[static_cast<size_t>(a)];
            if (!moves.changed || moves.community_count == static_cast<int>(level.size()))
                break;
            level = coarsen(level, moves.community, moves.community_count);
        }
    }

    // dense renumber by first occurrence in node order
    std::vector<int> remap(n, -1);
    int next = 0;
    Partition part;
    for (size_t i = 0; i < n; ++i) {
        int& slot = remap[static_cast<size_t>(assignment[i])];
        if (slot < 0) slot = next++;
        part.assignment[graph.id(static_cast<int>(i))] = slot;
    }
    return part;
}

size_t FrontSet::total_nodes() const {
    size_t total = 0;
    for (const auto& f : fronts) total += f.size();
    for (const auto& d : discarded) total += d.size();
    return total;
}

FrontSet make_fronts(const Partition& partition, int64_t min_size) {
    std::map<int, std::vector<std::string>> clusters;
    for (const auto& [node, c] : partition.assignment)
        clusters[c].push_back(node); // map iteration => members arrive sorted

    std::vector<std::vector<std::string>> all;
    all.reserve(clusters.size());
    for (auto& [c, members] : clusters)
        all.push_back(std::move(members));

    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front(); // members sorted, front() is the smallest id
    });

    FrontSet fs;
    fs.min_size = min_size;
    for (auto& cluster : all) {
        if (static_cast<int64_t>(cluster.size()) >= min_size)
            fs.fronts.push_back(std::move(cluster));
        else
            fs.discarded.push_back(std::move(cluster));
    }
    return fs;
}

FrontGraph front_interactions(const CitationGraph& directed, const FrontSet& fronts,
                              const KeepRule& rule) {
    FrontGraph fg;
    fg.front_count = fronts.fronts.size();
    fg.weight.assign(fg.front_count, std::vector<int64_t>(fg.front_count, 0));

    std::unordered_map<std::string, int> front_of;
    for (size_t f = 0; f < fronts.fronts.size(); ++f)
        for (const auto& node : fronts.fronts[f]) {
            if (!directed.has_node(node))
                throw DataError("front node not present in graph: " + node);
            front_of.emplace(node, static_cast<int>(f));
        }

    for (size_t i = 0; i < directed.node_count(); ++i) {
        auto it = front_of.find(directed.id(static_cast<int>(i)));
        if (it == front_of.end()) continue;
        int fi = it->second;
        for (int tgt : directed.out_edges(static_cast<int>(i))) {
            auto jt = front_of.find(directed.id(tgt));
            if (jt == front_of.end()) continue;
            int fj = jt->second;
            if (fi == fj) continue;
            ++fg.weight[static_cast<size_t>(fi)][static_cast<size_t>(fj)];
            ++fg.weight[static_cast<size_t>(fj)][static_cast<size_t>(fi)];
        }
    }

    int64_t max_w = 0;
    for (size_t i = 0; i < fg.front_count; ++i)
        for (size_t j = i + 1; j < fg.front_count; ++j)
            max_w = std::max(max_w, fg.weight[i][j]);

    if (max_w > 0) {
        double cutoff = rule.fraction_of_max * static_cast<double>(max_w);
        std::vector<std::pair<int64_t, std::pair<size_t, size_t>>> heaviest(fg.front_count,
                                                                            {0, {0, 0}});
        for (size_t i = 0; i < fg.front_count; ++i)
            for (size_t j = i + 1; j < fg.front_count; ++j) {
                int64_t w = fg.weight[i][j];
                if (w > heaviest[i].first) heaviest[i] = {w, {i, j}};
                if (w > heaviest[j].first) heaviest[j] = {w, {i, j}};
            }
        std::vector<std::vector<bool>> keep(fg.front_count,
                                            std::vector<bool>(fg.front_count, false));
        for (size_t i = 0; i < fg.front_count; ++i)
            for (size_t j = i + 1; j < fg.front_count; ++j)
                if (fg.weight[i][j] > 0 && static_cast<double>(fg.weight[i][j]) >= cutoff)
                    keep[i][j] = true;
        if (rule.keep_heaviest_per_front)
            for (const auto& [w, edge] : heaviest)
                if (w > 0) keep[edge.first][edge.second] = true;
        for (size_t i = 0; i < fg.front_count; ++i)
            for (size_t j = i + 1; j < fg.front_count; ++j)
                if (keep[i][j])
                    fg.kept.emplace_back(static_cast<int>(i), static_cast<int>(j),
                                         fg.weight[i][j]);
    }
    return fg;
}

void write_partition(std::ostream& out, const Partition& partition) {
    for (const auto& [node, c] : partition.assignment)
        out << node << '\t' << c << '\n';
}

Partition read_partition(std::istream& in) {
    Partition p;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("partition line " + std::to_string(lineno) +
                             ": expected 'node<TAB>cluster'");
        std::string node = trim(line.substr(0, tab));
        std::string cs = trim(line.substr(tab + 1));
        int c = 0;
        auto res = std::from_chars(cs.data(), cs.data() + cs.size(), c);
        if (res.ec != std::errc() || res.ptr != cs.data() + cs.size() || c < 0)
            throw ParseError("partition line " + std::to_string(lineno) + ": bad cluster id");
        if (!p.assignment.emplace(node, c).second)
            throw ParseError("partition line " + std::to_string(lineno) + ": duplicate node " +
                             node);
    }
    return p;
}

} // namespace fronts
