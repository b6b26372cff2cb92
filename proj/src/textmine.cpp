#include "fronts/textmine.hpp"

#include "fronts/community.hpp"
#include "fronts/errors.hpp"
#include "fronts/strutil.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>

namespace fronts {

std::unordered_set<std::string> load_stopwords(std::istream& in) {
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = to_lower_ascii(trim(line));
        if (!w.empty() && w[0] != '#') words.insert(w);
    }
    return words;
}

namespace {

bool is_token_char(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           c >= 0x80;
}

bool is_pure_number(std::string_view tok) {
    for (char c : tok)
        if (c < '0' || c > '9') return false;
    return true;
}

// Plain plural stripping, used only when strip_suffixes is on.
std::string strip_plural(std::string s) {
    auto ends = [&s](std::string_view suf) {
        return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends("sses")) return s.substr(0, s.size() - 2);
    if (ends("ies") && s.size() > 4) return s.substr(0, s.size() - 3) + "y";
    if (ends("ss") || ends("us") || ends("is")) return s;
    if (ends("s") && s.size() > 3) return s.substr(0, s.size() - 1);
    return s;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text,
                                  const std::unordered_set<std::string>& stopwords,
                                  const TokenizeOptions& options) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < text.size()) {
        if (!is_token_char(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < text.size() && is_token_char(static_cast<unsigned char>(text[i]))) ++i;
        std::string tok = to_lower_ascii(text.substr(start, i - start));
        if (options.strip_suffixes) tok = strip_plural(std::move(tok));
        if (tok.size() < 2) continue;
        if (is_pure_number(tok)) continue;
        if (stopwords.count(tok)) continue;
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

int64_t TermIndex::df(const std::string& term) const {
    auto it = term_id_.find(term);
    if (it == term_id_.end())
        throw DataError("unknown term: " + term);
    return static_cast<int64_t>(postings_[static_cast<size_t>(it->second)].size());
}

const std::vector<int>& TermIndex::postings_idx(const std::string& term) const {
    auto it = term_id_.find(term);
    if (it == term_id_.end())
        throw DataError("unknown term: " + term);
    return postings_[static_cast<size_t>(it->second)];
}

int TermIndex::doc_index(const std::string& doc) const {
    auto it = doc_index_.find(doc);
    if (it == doc_index_.end())
        throw DataError("unknown document: " + doc);
    return it->second;
}

TermIndex build_index(const std::vector<std::pair<std::string, std::string>>& docs,
                      const std::unordered_set<std::string>& stopwords, int64_t min_df,
                      const TokenizeOptions& options) {
    TermIndex index;
    std::map<std::string, std::vector<int>> postings; // sorted terms
    for (const auto& [id, abstract] : docs) {
        if (!index.doc_index_.emplace(id, static_cast<int>(index.doc_ids_.size())).second)
            throw DataError("duplicate document id: " + id);
        int doc = static_cast<int>(index.doc_ids_.size());
        index.doc_ids_.push_back(id);
        std::vector<std::string> toks = tokenize(abstract, stopwords, options);
        std::sort(toks.begin(), toks.end());
        toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
        for (auto& t : toks)
            postings[std::move(t)].push_back(doc); // docs arrive in order => sorted
    }
    for (auto& [term, plist] : postings) {
        if (static_cast<int64_t>(plist.size()) < min_df) continue;
        index.term_id_.emplace(term, static_cast<int>(index.vocabulary_.size()));
        index.vocabulary_.push_back(term);
        index.postings_.push_back(std::move(plist));
    }
    return index;
}

namespace {

std::vector<char> front_mask(const std::vector<std::string>& front_docs, const TermIndex& index) {
    std::vector<char> mask(index.doc_count(), 0);
    for (const auto& doc : front_docs)
        mask[static_cast<size_t>(index.doc_index(doc))] = 1;
    return mask;
}

TermScore score_with_mask(const std::string& term, const std::vector<char>& mask,
                          int64_t front_size, const TermIndex& index) {
    const std::vector<int>& plist = index.postings_idx(term);
    int64_t inter = 0;
    for (int doc : plist)
        if (mask[static_cast<size_t>(doc)]) ++inter;
    TermScore s;
    s.term = term;
    s.df_in_front = inter;
    s.df_total = static_cast<int64_t>(plist.size());
    int64_t uni = s.df_total + front_size - inter;
    s.jaccard = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
    return s;
}

} // namespace

TermScore jaccard_score(const std::string& term, const std::vector<std::string>& front_docs,
                        const TermIndex& index) {
    std::vector<char> mask = front_mask(front_docs, index);
    return score_with_mask(term, mask, static_cast<int64_t>(front_docs.size()), index);
}

std::vector<TermScore> top_terms(const std::vector<std::string>& front_docs,
                                 const TermIndex& index, int k) {
    if (k < 1)
        throw UsageError("top_terms: k must be >= 1");
    std::vector<char> mask = front_mask(front_docs, index);
    std::vector<TermScore> scores;
    scores.reserve(index.vocabulary().size());
    for (const auto& term : index.vocabulary())
        scores.push_back(score_with_mask(term, mask, static_cast<int64_t>(front_docs.size()), index));
    std::sort(scores.begin(), scores.end(), [](const TermScore& a, const TermScore& b) {
        if (a.jaccard != b.jaccard) return a.jaccard > b.jaccard;
        if (a.df_in_front != b.df_in_front) return a.df_in_front > b.df_in_front;
        return a.term < b.term;
    });
    if (scores.size() > static_cast<size_t>(k)) scores.resize(static_cast<size_t>(k));
    return scores;
}

Contingency contingency(const FrontSet& fronts, const TermIndex& index, int per_front_top) {
    if (fronts.fronts.size() < 2)
        throw DataError("contingency requires at least 2 fronts");

    std::map<std::string, int> selected; // term -> column (assigned after collection)
    for (const auto& front : fronts.fronts)
        for (const TermScore& s : top_terms(front, index, per_front_top))
            selected.emplace(s.term, 0);

    Contingency table;
    for (auto& [term, col] : selected) {
        col = static_cast<int>(table.terms.size());
        table.terms.push_back(term);
    }
    table.counts.assign(fronts.fronts.size(), std::vector<int64_t>(table.terms.size(), 0));
    for (size_t f = 0; f < fronts.fronts.size(); ++f) {
        std::vector<char> mask = front_mask(fronts.fronts[f], index);
        for (size_t c = 0; c < table.terms.size(); ++c)
            for (int doc : index.postings_idx(table.terms[c]))
                if (mask[static_cast<size_t>(doc)]) ++table.counts[f][c];
    }

    // drop all-zero columns
    std::vector<size_t> keep;
    for (size_t c = 0; c < table.terms.size(); ++c) {
        int64_t colsum = 0;
        for (size_t f = 0; f < table.counts.size(); ++f) colsum += table.counts[f][c];
        if (colsum > 0) keep.push_back(c);
    }
    if (keep.empty())
        throw DataError("contingency matrix is all zero");
    if (keep.size() != table.terms.size()) {
        Contingency pruned;
        for (size_t c : keep) pruned.terms.push_back(table.terms[c]);
        pruned.counts.assign(table.counts.size(), {});
        for (size_t f = 0; f < table.counts.size(); ++f)
            for (size_t c : keep) pruned.counts[f].push_back(table.counts[f][c]);
        return pruned;
    }
    return table;
}

void write_contingency(std::ostream& out, const Contingency& table) {
    out << "front";
    for (const auto& t : table.terms) out << '\t' << t;
    out << '\n';
    for (size_t f = 0; f < table.counts.size(); ++f) {
        out << (f + 1);
        for (int64_t v : table.counts[f]) out << '\t' << v;
        out << '\n';
    }
}

Contingency read_contingency(std::istream& in) {
    Contingency table;
    std::string line;
    bool header = true;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cols = split(line, '\t');
        if (header) {
            header = false;
            for (size_t i = 1; i < cols.size(); ++i) table.terms.push_back(cols[i]);
            continue;
        }
        if (cols.size() != table.terms.size() + 1)
            throw ParseError("contingency line " + std::to_string(lineno) +
                             ": wrong column count");
        std::vector<int64_t> row;
        for (size_t i = 1; i < cols.size(); ++i) {
            int64_t v = 0;
            auto t = trim(cols[i]);
            auto res = std::from_chars(t.data(), t.data() + t.size(), v);
            if (res.ec != std::errc() || v < 0)
                throw ParseError("contingency line " + std::to_string(lineno) + ": bad count");
            row.push_back(v);
        }
        table.counts.push_back(std::move(row));
    }
    if (table.terms.empty() || table.counts.empty())
        throw ParseError("contingency table is empty");
    return table;
}

} // namespace fronts
