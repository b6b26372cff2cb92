#include "fronts/report.hpp"

#include "fronts/errors.hpp"
#include "fronts/strutil.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_set>

namespace fronts {

FrontReport build_report(const std::vector<std::string>& front, int rank,
                         const CitationGraph& core, const CitationGraph& full,
                         const TermIndex& index, const std::map<std::string, Record>* records) {
    FrontReport report;
    report.rank = rank;
    report.size = static_cast<int64_t>(front.size());

    std::unordered_set<std::string> members(front.begin(), front.end());
    for (const auto& node : front) {
        int idx = core.node_index(node);
        for (int tgt : core.out_edges(idx))
            if (members.count(core.id(tgt))) ++report.intra_citations;
    }

    std::vector<TopPaper> papers;
    papers.reserve(front.size());
    for (const auto& node : front) {
        TopPaper p;
        p.id = node;
        p.indegree = indegree(full, node);
        if (records) {
            auto it = records->find(node);
            if (it != records->end() && !it->second.authors.empty() && it->second.year != 0)
                p.label = render_reference(it->second);
        }
        papers.push_back(std::move(p));
    }
    std::sort(papers.begin(), papers.end(), [](const TopPaper& a, const TopPaper& b) {
        if (a.indegree != b.indegree) return a.indegree > b.indegree;
        return a.id < b.id;
    });
    if (papers.size() > 5) papers.resize(5);
    report.top_papers = std::move(papers);

    report.top_terms = top_terms(front, index, 10);
    return report;
}

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "graphml") return GraphFormat::Graphml;
    if (name == "dot") return GraphFormat::Dot;
    if (name == "edgelist") return GraphFormat::Edgelist;
    throw UsageError("unknown graph format '" + std::string(name) +
                     "' (expected graphml, dot, edgelist)");
}

namespace {

std::vector<int> sorted_node_order(const CitationGraph& g) {
    std::vector<int> order(g.node_count());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
    return order;
}

std::vector<std::pair<std::string, std::string>> sorted_edges(const CitationGraph& g) {
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(static_cast<size_t>(g.edge_count()));
    for (size_t i = 0; i < g.node_count(); ++i)
        for (int tgt : g.out_edges(static_cast<int>(i)))
            edges.emplace_back(g.id(static_cast<int>(i)), g.id(tgt));
    std::sort(edges.begin(), edges.end());
    return edges;
}

int front_of(const Partition& p, const std::string& id) {
    auto it = p.assignment.find(id);
    return it == p.assignment.end() ? -1 : it->second;
}

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string export_graph(const CitationGraph& graph, const Partition* partition,
                         GraphFormat format) {
    std::vector<int> order = sorted_node_order(graph);
    auto edges = sorted_edges(graph);

    if (format == GraphFormat::Edgelist) {
        std::string out;
        for (const auto& [a, b] : edges) {
            out += a;
            out += '\t';
            out += b;
            out += '\n';
        }
        return out;
    }

    if (format == GraphFormat::Dot) {
        std::string out = "digraph citations {\n";
        for (int idx : order) {
            out += "  " + dot_quote(graph.id(idx));
            if (partition) {
                int f = front_of(*partition, graph.id(idx));
                if (f >= 0)
                    out += " [front=" + std::to_string(f) + ", colorscheme=paired12, color=" +
                           std::to_string(f % 12 + 1) + "]";
            }
            out += ";\n";
        }
        for (const auto& [a, b] : edges)
            out += "  " + dot_quote(a) + " -> " + dot_quote(b) + ";\n";
        out += "}\n";
        return out;
    }

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    if (partition)
        out += "  <key id=\"front\" for=\"node\" attr.name=\"front\" attr.type=\"int\"/>\n";
    out += "  <graph id=\"citations\" edgedefault=\"directed\">\n";
    for (int idx : order) {
        const std::string id = xml_escape(graph.id(idx));
        if (partition) {
            int f = front_of(*partition, graph.id(idx));
            if (f >= 0) {
                out += "    <node id=\"" + id + "\"><data key=\"front\">" + std::to_string(f) +
                       "</data></node>\n";
                continue;
            }
        }
        out += "    <node id=\"" + id + "\"/>\n";
    }
    for (const auto& [a, b] : edges)
        out += "    <edge source=\"" + xml_escape(a) + "\" target=\"" + xml_escape(b) + "\"/>\n";
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::string export_front_graph(const FrontGraph& fg, GraphFormat format) {
    auto name = [](int i) { return "front" + std::to_string(i + 1); };
    if (format == GraphFormat::Edgelist) {
        std::string out;
        for (const auto& [i, j, w] : fg.kept)
            out += name(i) + "\t" + name(j) + "\t" + std::to_string(w) + "\n";
        return out;
    }
    if (format == GraphFormat::Dot) {
        std::string out = "graph front_interactions {\n";
        for (size_t i = 0; i < fg.front_count; ++i)
            out += "  " + dot_quote(name(static_cast<int>(i))) + ";\n";
        for (const auto& [i, j, w] : fg.kept)
            out += "  " + dot_quote(name(i)) + " -- " + dot_quote(name(j)) + " [weight=" +
                   std::to_string(w) + ", label=" + std::to_string(w) + "];\n";
        out += "}\n";
        return out;
    }
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
                      "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
                      "  <graph id=\"front_interactions\" edgedefault=\"undirected\">\n";
    for (size_t i = 0; i < fg.front_count; ++i)
        out += "    <node id=\"" + name(static_cast<int>(i)) + "\"/>\n";
    for (const auto& [i, j, w] : fg.kept)
        out += "    <edge source=\"" + name(i) + "\" target=\"" + name(j) +
               "\"><data key=\"weight\">" + std::to_string(w) + "</data></edge>\n";
    out += "  </graph>\n</graphml>\n";
    return out;
}

namespace {

struct PlotScale {
    double min_x, max_x, min_y, max_y;
    double to_px_x(double x) const {
        return 60.0 + (x - min_x) / (max_x - min_x) * 520.0;
    }
    double to_px_y(double y) const {
        return 40.0 + (max_y - y) / (max_y - min_y) * 420.0;
    }
};

} // namespace

std::string render_ca_plot(const CaProjection& proj, const std::vector<std::string>& row_labels,
                           const std::vector<std::string>& col_labels) {
    if (proj.rows.empty())
        throw DataError("render_ca_plot: no row points");
    if (row_labels.size() != proj.rows.size())
        throw DataError("render_ca_plot: label count does not match row points");
    const bool with_cols = !col_labels.empty();
    if (with_cols && col_labels.size() != proj.cols.size())
        throw DataError("render_ca_plot: label count does not match column points");

    PlotScale sc{proj.rows[0][0], proj.rows[0][0], proj.rows[0][1], proj.rows[0][1]};
    auto widen = [&sc](const std::array<double, 2>& p) {
        sc.min_x = std::min(sc.min_x, p[0]);
        sc.max_x = std::max(sc.max_x, p[0]);
        sc.min_y = std::min(sc.min_y, p[1]);
        sc.max_y = std::max(sc.max_y, p[1]);
    };
    for (const auto& p : proj.rows) widen(p);
    if (with_cols)
        for (const auto& p : proj.cols) widen(p);
    // pad so points never sit on the frame; also handles degenerate ranges
    double span_x = sc.max_x - sc.min_x, span_y = sc.max_y - sc.min_y;
    double pad_x = span_x > 0 ? 0.08 * span_x : 1.0;
    double pad_y = span_y > 0 ? 0.08 * span_y : 1.0;
    sc.min_x -= pad_x;
    sc.max_x += pad_x;
    sc.min_y -= pad_y;
    sc.max_y += pad_y;

    auto px = [](double v) { return fmt_fixed(v, 3); };
    std::string svg =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"520\" "
        "viewBox=\"0 0 640 520\">\n"
        "  <rect x=\"60\" y=\"40\" width=\"520\" height=\"420\" fill=\"white\" "
        "stroke=\"#444444\"/>\n";

    // zero axes when inside the frame
    if (sc.min_x < 0 && sc.max_x > 0)
        svg += "  <line x1=\"" + px(sc.to_px_x(0)) + "\" y1=\"40\" x2=\"" + px(sc.to_px_x(0)) +
               "\" y2=\"460\" stroke=\"#cccccc\"/>\n";
    if (sc.min_y < 0 && sc.max_y > 0)
        svg += "  <line x1=\"60\" y1=\"" + px(sc.to_px_y(0)) + "\" x2=\"580\" y2=\"" +
               px(sc.to_px_y(0)) + "\" stroke=\"#cccccc\"/>\n";

    if (with_cols) {
        for (size_t j = 0; j < proj.cols.size(); ++j) {
            std::string x = px(sc.to_px_x(proj.cols[j][0]));
            std::string y = px(sc.to_px_y(proj.cols[j][1]));
            svg += "  <g class=\"term-marker\"><text x=\"" + x + "\" y=\"" + y +
                   "\" font-size=\"9\" fill=\"#888888\" text-anchor=\"middle\">" +
                   xml_escape(col_labels[j]) + "</text></g>\n";
        }
    }
    for (size_t i = 0; i < proj.rows.size(); ++i) {
        std::string x = px(sc.to_px_x(proj.rows[i][0]));
        std::string y = px(sc.to_px_y(proj.rows[i][1]));
        svg += "  <g class=\"front-marker\"><circle cx=\"" + x + "\" cy=\"" + y +
               "\" r=\"5\" fill=\"#1f6fb5\"/><text x=\"" + x + "\" y=\"" + y +
               "\" dy=\"-8\" font-size=\"12\" text-anchor=\"middle\">" +
               xml_escape(row_labels[i]) + "</text></g>\n";
    }

    svg += "  <text x=\"320\" y=\"495\" font-size=\"12\" text-anchor=\"middle\">Axis 1 (" +
           fmt_fixed(proj.explained[0] * 100.0, 1) + "%)</text>\n";
    svg += "  <text x=\"20\" y=\"250\" font-size=\"12\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 20 250)\">Axis 2 (" +
           fmt_fixed(proj.explained[1] * 100.0, 1) + "%)</text>\n";
    svg += "</svg>\n";
    return svg;
}

namespace {

std::string format_paper(const TopPaper& p) {
    return escape_field(p.id) + "|" + std::to_string(p.indegree) + "|" + escape_field(p.label);
}

std::string format_term(const TermScore& t) {
    return escape_field(t.term) + "|" + fmt_fixed(t.jaccard, 6) + "|" +
           std::to_string(t.df_in_front) + "|" + std::to_string(t.df_total);
}

int64_t parse_i64(std::string_view s, const char* what) {
    int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError(std::string("table: bad ") + what + " value '" + std::string(s) + "'");
    return v;
}

double parse_f64(std::string_view s, const char* what) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError(std::string("table: bad ") + what + " value '" + std::string(s) + "'");
    return v;
}

} // namespace

std::string export_tables(const std::vector<FrontReport>& reports, char delim) {
    std::string out = "rank";
    out += delim;
    out += "size";
    out += delim;
    out += "intra_citations";
    out += delim;
    out += "top_papers";
    out += delim;
    out += "top_terms";
    out += '\n';
    for (const FrontReport& r : reports) {
        out += std::to_string(r.rank);
        out += delim;
        out += std::to_string(r.size);
        out += delim;
        out += std::to_string(r.intra_citations);
        out += delim;
        for (size_t i = 0; i < r.top_papers.size(); ++i) {
            if (i) out += ';';
            out += format_paper(r.top_papers[i]);
        }
        out += delim;
        for (size_t i = 0; i < r.top_terms.size(); ++i) {
            if (i) out += ';';
            out += format_term(r.top_terms[i]);
        }
        out += '\n';
    }
    return out;
}

std::vector<FrontReport> parse_tables(std::string_view text, char delim) {
    std::vector<FrontReport> reports;
    bool header = true;
    for (const auto& line : split(text, '\n')) {
        if (trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        auto cols = split(line, delim);
        if (cols.size() != 5)
            throw ParseError("table row has " + std::to_string(cols.size()) +
                             " columns, expected 5");
        FrontReport r;
        r.rank = static_cast<int>(parse_i64(cols[0], "rank"));
        r.size = parse_i64(cols[1], "size");
        r.intra_citations = parse_i64(cols[2], "intra_citations");
        if (!cols[3].empty()) {
            for (const auto& entry : split(cols[3], ';')) {
                auto parts = split(entry, '|');
                if (parts.size() != 3)
                    throw ParseError("table: malformed paper entry '" + entry + "'");
                TopPaper p;
                p.id = unescape_field(parts[0]);
                p.indegree = parse_i64(parts[1], "indegree");
                p.label = unescape_field(parts[2]);
                r.top_papers.push_back(std::move(p));
            }
        }
        if (!cols[4].empty()) {
            for (const auto& entry : split(cols[4], ';')) {
                auto parts = split(entry, '|');
                if (parts.size() != 4)
                    throw ParseError("table: malformed term entry '" + entry + "'");
                TermScore t;
                t.term = unescape_field(parts[0]);
                t.jaccard = parse_f64(parts[1], "jaccard");
                t.df_in_front = parse_i64(parts[2], "df_in_front");
                t.df_total = parse_i64(parts[3], "df_total");
                r.top_terms.push_back(std::move(t));
            }
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

std::string export_ca_coords(const CaModel& model, const std::vector<std::string>& row_labels,
                             const std::vector<std::string>& col_labels, bool standard_coords) {
    if (row_labels.size() != model.row_principal.rows() ||
        col_labels.size() != model.col_principal.rows())
        throw DataError("export_ca_coords: label counts do not match the model");

    auto coord = [&](const Matrix& principal, size_t i, size_t k) {
        if (k >= model.dimensions()) return 0.0;
        double c = principal(i, k);
        if (standard_coords) c /= model.singular_values[k];
        return c;
    };
    auto inertia_share = [&](const Matrix& principal, const std::vector<double>& masses,
                             size_t i) {
        double s = 0.0;
        for (size_t k = 0; k < model.dimensions(); ++k)
            s += principal(i, k) * principal(i, k);
        return model.total_inertia > 0 ? masses[i] * s / model.total_inertia : 0.0;
    };

    std::string out = "entity\ttype\taxis1\taxis2\tmass\tinertia_share\n";
    for (size_t i = 0; i < row_labels.size(); ++i) {
        out += escape_field(row_labels[i]) + "\trow\t" +
               fmt_fixed(coord(model.row_principal, i, 0), 6) + "\t" +
               fmt_fixed(coord(model.row_principal, i, 1), 6) + "\t" +
               fmt_fixed(model.row_masses[i], 6) + "\t" +
               fmt_fixed(inertia_share(model.row_principal, model.row_masses, i), 6) + "\n";
    }
    for (size_t j = 0; j < col_labels.size(); ++j) {
        out += escape_field(col_labels[j]) + "\tcol\t" +
               fmt_fixed(coord(model.col_principal, j, 0), 6) + "\t" +
               fmt_fixed(coord(model.col_principal, j, 1), 6) + "\t" +
               fmt_fixed(model.col_masses[j], 6) + "\t" +
               fmt_fixed(inertia_share(model.col_principal, model.col_masses, j), 6) + "\n";
    }
    return out;
}

} // namespace fronts
