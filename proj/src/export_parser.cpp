#include "fronts/export_parser.hpp"

#include "fronts/errors.hpp"
#include "fronts/strutil.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

using nlohmann::json;

namespace fronts {

EncodingPolicy parse_encoding_policy(std::string_view name) {
    if (name == "utf8") return EncodingPolicy::Utf8Strict;
    if (name == "utf8-replace") return EncodingPolicy::Utf8Replace;
    if (name == "latin1") return EncodingPolicy::Latin1;
    throw UsageError("unknown encoding policy '" + std::string(name) +
                     "' (expected utf8, utf8-replace, latin1)");
}

namespace {

constexpr std::string_view kReplacement = "\xef\xbf\xbd"; // U+FFFD

// Length of the UTF-8 sequence starting at s[i], or 0 when invalid.
size_t utf8_seq_len(std::string_view s, size_t i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    size_t len;
    if (c < 0x80) return 1;
    if ((c & 0xe0) == 0xc0) len = 2;
    else if ((c & 0xf0) == 0xe0) len = 3;
    else if ((c & 0xf8) == 0xf0) len = 4;
    else return 0;
    if (i + len > s.size()) return 0;
    for (size_t j = 1; j < len; ++j)
        if ((static_cast<unsigned char>(s[i + j]) & 0xc0) != 0x80) return 0;
    // reject overlong encodings and out-of-range code points
    if (len == 2 && c < 0xc2) return 0;
    if (len == 3 && c == 0xe0 && static_cast<unsigned char>(s[i + 1]) < 0xa0) return 0;
    if (len == 4 && (c > 0xf4 || (c == 0xf0 && static_cast<unsigned char>(s[i + 1]) < 0x90) ||
                     (c == 0xf4 && static_cast<unsigned char>(s[i + 1]) > 0x8f)))
        return 0;
    return len;
}

std::string decode(std::string_view bytes, EncodingPolicy policy) {
    if (policy == EncodingPolicy::Latin1) {
        std::string out;
        out.reserve(bytes.size());
        for (unsigned char c : bytes) {
            if (c < 0x80) {
                out += static_cast<char>(c);
            } else {
                out += static_cast<char>(0xc0 | (c >> 6));
                out += static_cast<char>(0x80 | (c & 0x3f));
            }
        }
        return out;
    }
    std::string out;
    out.reserve(bytes.size());
    size_t i = 0;
    while (i < bytes.size()) {
        size_t len = utf8_seq_len(bytes, i);
        if (len == 0) {
            if (policy == EncodingPolicy::Utf8Strict)
                throw ParseError("undecodable byte in input", i);
            out += kReplacement;
            ++i;
            continue;
        }
        out.append(bytes.substr(i, len));
        i += len;
    }
    return out;
}

struct Line {
    std::string text;   // decoded, no terminator
    size_t offset;      // byte offset of line start in the original input
};

std::vector<Line> split_lines(std::string_view bytes, EncodingPolicy policy) {
    std::vector<Line> lines;
    size_t start = 0;
    for (size_t i = 0; i <= bytes.size(); ++i) {
        if (i == bytes.size() || bytes[i] == '\n') {
            std::string_view raw = bytes.substr(start, i - start);
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (i < bytes.size() || !raw.empty())
                lines.push_back({decode(raw, policy), start});
            start = i + 1;
        }
    }
    return lines;
}

bool is_tag_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

int parse_year_field(const std::string& value, size_t offset) {
    int year = 0;
    std::string v = trim(value);
    auto res = std::from_chars(v.data(), v.data() + v.size(), year);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ParseError("PY field is not an integer: '" + v + "'", offset);
    if (year < 1500 || year > 2100)
        throw ParseError("PY field out of range [1500,2100]: " + v, offset);
    return year;
}

} // namespace

ParsedCorpus parse_export(std::string_view bytes, EncodingPolicy policy) {
    std::vector<Line> lines = split_lines(bytes, policy);
    ParsedCorpus corpus;
    std::map<std::string, std::pair<size_t, size_t>> seen_ids; // id -> (ordinal, offset)

    bool in_record = false;
    size_t record_start = 0;
    Record rec;
    std::string tag;                                // active tag for continuations
    std::vector<std::pair<std::string, size_t>> values; // lines of the active tag
    std::vector<UnknownField> pending_unknown;

    auto flush_field = [&]() {
        if (tag.empty()) return;
        auto joined = [&]() {
            std::string s;
            for (size_t i = 0; i < values.size(); ++i) {
                if (i) s += ' ';
                s += trim(values[i].first);
            }
            return s;
        };
        if (tag == "AU") {
            for (const auto& [v, off] : values) {
                (void)off;
                for (const auto& part : split(v, ';')) {
                    std::string a = trim(part);
                    if (!a.empty()) rec.authors.push_back(a);
                }
            }
        } else if (tag == "TI") {
            rec.title = joined();
        } else if (tag == "SO") {
            rec.source = joined();
        } else if (tag == "AB") {
            rec.abstract = joined();
        } else if (tag == "PY") {
            rec.year = parse_year_field(values.front().first, values.front().second);
        } else if (tag == "VL") {
            rec.volume = trim(values.front().first);
        } else if (tag == "BP") {
            rec.start_page = trim(values.front().first);
        } else if (tag == "DI") {
            rec.doi = normalize_doi(values.front().first);
        } else if (tag == "UT") {
            rec.accession_id = trim(values.front().first);
        } else if (tag == "CR") {
            for (const auto& [v, off] : values) {
                (void)off;
                rec.cited_refs.push_back(v);
            }
        } else {
            for (const auto& [v, off] : values) {
                (void)off;
                pending_unknown.push_back({0, tag, v});
            }
        }
        tag.clear();
        values.clear();
    };

    auto close_record = [&](size_t end_offset) {
        flush_field();
        if (rec.accession_id.empty())
            throw ParseError("record has no UT (accession id) field", record_start);
        auto [it, inserted] =
            seen_ids.emplace(rec.accession_id, std::make_pair(corpus.records.size(), record_start));
        if (!inserted)
            throw ParseError("duplicate accession_id '" + rec.accession_id + "': records " +
                                 std::to_string(it->second.first + 1) + " (byte offset " +
                                 std::to_string(it->second.second) + ") and " +
                                 std::to_string(corpus.records.size() + 1),
                             record_start);
        for (auto& u : pending_unknown) {
            u.record_index = corpus.records.size();
            corpus.unknown_fields.push_back(std::move(u));
        }
        pending_unknown.clear();
        corpus.records.push_back(std::move(rec));
        rec = Record{};
        in_record = false;
        (void)end_offset;
    };

    for (const Line& line : lines) {
        const std::string& text = line.text;
        if (trim(text).empty()) {
            if (in_record) flush_field();
            continue;
        }
        if (text.size() >= 3 && text[0] == ' ' && text[1] == ' ' && text[2] == ' ') {
            // continuation line
            if (!in_record || tag.empty())
                throw ParseError("continuation line outside any field", line.offset);
            values.push_back({text.substr(3), line.offset});
            continue;
        }
        if (text.size() < 2 || !is_tag_char(text[0]) || !is_tag_char(text[1]) ||
            (text.size() > 2 && text[2] != ' '))
            throw ParseError("malformed line (expected 2-letter tag in columns 1-2)", line.offset);
        std::string t = text.substr(0, 2);
        std::string value = text.size() > 3 ? text.substr(3) : std::string();

        if (t == "FN" || t == "VR") continue; // file header
        if (t == "EF") {
            if (in_record)
                throw ParseError("file terminator inside an unterminated record", record_start);
            break;
        }
        if (t == "ER") {
            if (!in_record)
                throw ParseError("end-of-record tag with no open record", line.offset);
            close_record(line.offset);
            continue;
        }
        if (!in_record) {
            in_record = true;
            record_start = line.offset;
        }
        flush_field();
        tag = t;
        values.clear();
        values.push_back({value, line.offset});
    }
    if (in_record)
        throw ParseError("truncated record block (missing ER tag)", record_start);
    return corpus;
}

ParsedCorpus parse_export(std::istream& in, EncodingPolicy policy) {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    return parse_export(std::string_view(bytes), policy);
}

ParsedCorpus parse_export_file(const std::filesystem::path& path, EncodingPolicy policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open input file: " + path.string());
    return parse_export(in, policy);
}

std::string render_export(const std::vector<Record>& records) {
    std::string out = "FN Research Front Mapper\nVR 1.0\n";
    auto emit_multi = [&out](const char* tag, const std::vector<std::string>& vals) {
        for (size_t i = 0; i < vals.size(); ++i) {
            out += i == 0 ? std::string(tag) + " " : std::string("   ");
            out += vals[i];
            out += '\n';
        }
    };
    for (const Record& r : records) {
        emit_multi("AU", r.authors);
        if (!r.title.empty()) out += "TI " + r.title + "\n";
        if (!r.source.empty()) out += "SO " + r.source + "\n";
        if (r.year != 0) out += "PY " + std::to_string(r.year) + "\n";
        if (r.volume) out += "VL " + *r.volume + "\n";
        if (r.start_page) out += "BP " + *r.start_page + "\n";
        if (r.doi) out += "DI " + *r.doi + "\n";
        if (!r.abstract.empty()) out += "AB " + r.abstract + "\n";
        emit_multi("CR", r.cited_refs);
        out += "UT " + r.accession_id + "\n";
        out += "ER\n";
    }
    out += "EF\n";
    return out;
}

DedupeResult dedupe(std::vector<Record> records) {
    DedupeResult result;
    result.records.reserve(records.size());
    std::map<std::string, bool> seen;
    for (auto& r : records) {
        if (seen.emplace(r.accession_id, true).second)
            result.records.push_back(std::move(r));
        else
            ++result.removed;
    }
    return result;
}

std::string to_canonical_line(const Record& r) {
    json j;
    j["id"] = r.accession_id;
    j["authors"] = r.authors;
    j["title"] = r.title;
    j["source"] = r.source;
    if (r.year != 0) j["year"] = r.year;
    if (r.volume) j["volume"] = *r.volume;
    if (r.start_page) j["start_page"] = *r.start_page;
    if (r.doi) j["doi"] = *r.doi;
    j["abstract"] = r.abstract;
    j["cited_refs"] = r.cited_refs;
    return j.dump();
}

Record from_canonical_line(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ParseError("canonical record line is not a JSON object");
    Record r;
    try {
        r.accession_id = j.at("id").get<std::string>();
        r.authors = j.at("authors").get<std::vector<std::string>>();
        r.title = j.at("title").get<std::string>();
        r.source = j.at("source").get<std::string>();
        if (j.contains("year")) r.year = j["year"].get<int>();
        if (j.contains("volume")) r.volume = j["volume"].get<std::string>();
        if (j.contains("start_page")) r.start_page = j["start_page"].get<std::string>();
        if (j.contains("doi")) r.doi = j["doi"].get<std::string>();
        r.abstract = j.at("abstract").get<std::string>();
        r.cited_refs = j.at("cited_refs").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("canonical record line: ") + e.what());
    }
    return r;
}

void write_canonical(std::ostream& out, const std::vector<Record>& records) {
    for (const Record& r : records)
        out << to_canonical_line(r) << '\n';
}

std::vector<Record> read_canonical(std::istream& in) {
    std::vector<Record> records;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        records.push_back(from_canonical_line(line));
    }
    return records;
}

} // namespace fronts
