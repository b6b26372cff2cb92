#include "fronts/record.hpp"

#include "fronts/errors.hpp"
#include "fronts/strutil.hpp"

#include <charconv>

namespace fronts {

namespace {

bool is_ascii_alnum(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool parse_year_token(std::string_view tok, int& year) {
    if (tok.empty() || tok.size() > 6) return false;
    for (char c : tok)
        if (c < '0' || c > '9') return false;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), year);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

} // namespace

std::string normalize_name(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (unsigned char c : s) {
        if (c == ' ' || c == '\t') {
            pending_space = true;
            continue;
        }
        if (is_ascii_alnum(c) || c >= 0x80) {
            if (pending_space && !out.empty()) out += ' ';
            pending_space = false;
            if (c >= 'a' && c <= 'z') c = static_cast<unsigned char>(c - 'a' + 'A');
            out += static_cast<char>(c);
        }
        // punctuation dropped; a run like "Ilie, N." keeps its word break
        // through the pending_space flag only if a space was present
    }
    return out;
}

std::string normalize_doi(std::string_view s) {
    return to_lower_ascii(trim(s));
}

std::string RefKey::match_token() const {
    std::string out = first_author;
    out += '\x1f';
    out += std::to_string(year);
    out += '\x1f';
    out += source;
    out += '\x1f';
    out += volume ? *volume : std::string("\x01");
    out += '\x1f';
    out += start_page ? *start_page : std::string("\x01");
    return out;
}

RefKey record_key(const Record& record) {
    if (record.authors.empty())
        throw DataError("record_key: record '" + record.accession_id + "' has no authors");
    if (record.year == 0)
        throw DataError("record_key: record '" + record.accession_id + "' has no year");
    RefKey key;
    key.first_author = normalize_name(record.authors.front());
    key.year = record.year;
    key.source = normalize_name(record.source);
    if (record.volume) key.volume = trim(*record.volume);
    if (record.start_page) key.start_page = trim(*record.start_page);
    if (record.doi) key.doi = normalize_doi(*record.doi);
    return key;
}

CitedRef parse_cited_ref(std::string_view line) {
    CitedRef ref;
    ref.raw = std::string(line);

    std::vector<std::string> parts = split(line, ',');
    for (auto& p : parts) p = trim(p);
    if (parts.size() < 3) return ref;

    RefKey key;
    key.first_author = normalize_name(parts[0]);
    if (key.first_author.empty()) return ref;
    if (!parse_year_token(parts[1], key.year)) return ref;
    key.source = normalize_name(parts[2]);
    if (key.source.empty()) return ref;

    // volume/page tails must start with a digit so plain words starting in
    // V or P are not misread
    auto number_tail = [](const std::string& tok) {
        if (tok.size() < 2 || tok[1] < '0' || tok[1] > '9') return false;
        for (size_t j = 2; j < tok.size(); ++j)
            if (!is_ascii_alnum(static_cast<unsigned char>(tok[j]))) return false;
        return true;
    };
    for (size_t i = 3; i < parts.size(); ++i) {
        const std::string& tok = parts[i];
        if (tok.empty()) continue;
        if (tok[0] == 'V' && !key.volume && number_tail(tok)) {
            key.volume = tok.substr(1);
            continue;
        }
        if (tok[0] == 'P' && !key.start_page && number_tail(tok)) {
            key.start_page = tok.substr(1);
            continue;
        }
        if (tok.size() > 4 && tok.compare(0, 4, "DOI ") == 0 && !key.doi) {
            key.doi = normalize_doi(tok.substr(4));
            continue;
        }
        // unrecognized trailing tokens are ignored
    }

    ref.key = std::move(key);
    return ref;
}

std::string render_reference(const Record& record) {
    RefKey key = record_key(record);
    std::string out = key.first_author;
    out += ", ";
    out += std::to_string(key.year);
    out += ", ";
    out += key.source;
    if (key.volume) {
        out += ", V";
        out += *key.volume;
    }
    if (key.start_page) {
        out += ", P";
        out += *key.start_page;
    }
    if (key.doi) {
        out += ", DOI ";
        out += *key.doi;
    }
    return out;
}

} // namespace fronts
