#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fronts {

struct FrontSet;

// Embedded English stopword list (see docs/formats.md for the full list).
const std::unordered_set<std::string>& default_stopwords();
std::unordered_set<std::string> load_stopwords(std::istream& in);

struct TokenizeOptions {
    bool strip_suffixes = false; // plain plural stripping, off by default
};

// Lowercases, splits on non-alphanumeric boundaries, drops tokens shorter
// than 2 chars, pure numbers, and stopwords. Duplicates are retained.
std::vector<std::string> tokenize(std::string_view text,
                                  const std::unordered_set<std::string>& stopwords,
                                  const TokenizeOptions& options = {});

// Document-term incidence over abstracts. Terms with document frequency
// below min_df are dropped from the vocabulary. Documents with no terms
// still count toward doc_count.
class TermIndex {
public:
    size_t doc_count() const { return doc_ids_.size(); }
    const std::vector<std::string>& vocabulary() const { return vocabulary_; } // sorted
    bool has_term(const std::string& term) const { return term_id_.count(term) != 0; }
    bool has_doc(const std::string& doc) const { return doc_index_.count(doc) != 0; }
    int64_t df(const std::string& term) const;
    const std::vector<int>& postings_idx(const std::string& term) const; // sorted doc indices
    int doc_index(const std::string& doc) const; // throws DataError when unknown
    const std::string& doc_id(int idx) const { return doc_ids_[static_cast<size_t>(idx)]; }

private:
    friend TermIndex build_index(const std::vector<std::pair<std::string, std::string>>&,
                                 const std::unordered_set<std::string>&, int64_t,
                                 const TokenizeOptions&);
    std::vector<std::string> vocabulary_;
    std::unordered_map<std::string, int> term_id_;
    std::vector<std::vector<int>> postings_;
    std::vector<std::string> doc_ids_;
    std::unordered_map<std::string, int> doc_index_;
};

TermIndex build_index(const std::vector<std::pair<std::string, std::string>>& docs,
                      const std::unordered_set<std::string>& stopwords, int64_t min_df = 2,
                      const TokenizeOptions& options = {});

struct TermScore {
    std::string term;
    double jaccard = 0.0;
    int64_t df_in_front = 0;
    int64_t df_total = 0;

    bool operator==(const TermScore&) const = default;
};

// J(term, front) = |D_t intersect D_f| / |D_t union D_f| over document sets.
TermScore jaccard_score(const std::string& term, const std::vector<std::string>& front_docs,
                        const TermIndex& index);

// k highest-Jaccard terms; ties by higher df_in_front, then lexicographic.
std::vector<TermScore> top_terms(const std::vector<std::string>& front_docs,
                                 const TermIndex& index, int k = 10);

// fronts x terms incidence counts. Terms selected as the union of each
// front's top per_front_top Jaccard terms; all-zero columns are dropped.
struct Contingency {
    std::vector<std::string> terms;            // sorted, column order
    std::vector<std::vector<int64_t>> counts;  // fronts x terms
};

Contingency contingency(const FrontSet& fronts, const TermIndex& index, int per_front_top = 50);

void write_contingency(std::ostream& out, const Contingency& table);
Contingency read_contingency(std::istream& in);

} // namespace fronts
