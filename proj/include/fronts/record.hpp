#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fronts {

// Matching key for resolving cited-reference strings to records.
struct RefKey {
    std::string first_author; // normalized: uppercase, punctuation stripped
    int year = 0;
    std::string source;       // normalized like first_author
    std::optional<std::string> volume;
    std::optional<std::string> start_page;
    std::optional<std::string> doi; // lowercase

    bool operator==(const RefKey&) const = default;

    // Composite of the five non-DOI fields, used as a hash-map key when
    // resolving references.
    std::string match_token() const;
};

// One cited-reference line, raw text preserved verbatim.
struct CitedRef {
    std::string raw;
    std::optional<RefKey> key; // absent when the line is unparseable
};

// One bibliographic item as parsed from a field-tagged export.
struct Record {
    std::string accession_id;
    std::vector<std::string> authors; // input order preserved
    std::string title;
    std::string source;               // journal abbreviation
    int year = 0;                     // 0 = absent
    std::optional<std::string> volume;
    std::optional<std::string> start_page;
    std::optional<std::string> doi;   // stored lowercase
    std::string abstract;             // may be empty
    std::vector<std::string> cited_refs; // raw lines

    bool operator==(const Record&) const = default;
};

// Uppercases ASCII letters, drops punctuation (every byte that is not
// alphanumeric, space, or >= 0x80), collapses whitespace runs, trims.
// Idempotent.
std::string normalize_name(std::string_view s);

// Lowercase ASCII; used for DOIs.
std::string normalize_doi(std::string_view s);

// Builds the record's own reference key from first author, year, source,
// volume, start page and DOI. Throws DataError when authors or year are
// missing.
RefKey record_key(const Record& record);

// Parses "Author, Year, Source[, Vvol][, Ppage][, DOI xxx]". Never throws;
// an unparseable line yields a CitedRef with no key.
CitedRef parse_cited_ref(std::string_view line);

// Renders the reference string other records would use to cite this one.
// parse_cited_ref(render_reference(r)).key == record_key(r).
std::string render_reference(const Record& record);

} // namespace fronts
