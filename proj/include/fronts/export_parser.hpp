#pragma once

#include "fronts/record.hpp"

#include <cstddef>
#include <iosfwd>
#include <filesystem>
#include <string>
#include <vector>

namespace fronts {

enum class EncodingPolicy {
    Utf8Strict,  // undecodable bytes are an error
    Utf8Replace, // undecodable bytes become U+FFFD
    Latin1,      // bytes 0x80..0xFF transcoded as ISO-8859-1
};

EncodingPolicy parse_encoding_policy(std::string_view name);

// Tag lines arriving with a tag outside the documented set are kept here.
struct UnknownField {
    size_t record_index; // index into ParsedCorpus::records
    std::string tag;
    std::string value;
};

struct ParsedCorpus {
    std::vector<Record> records;
    std::vector<UnknownField> unknown_fields;
};

// Parses the field-tagged export format (docs/formats.md; the bundled
// fixture is the normative example). Byte offsets in errors refer to the
// original input bytes.
ParsedCorpus parse_export(std::string_view bytes, EncodingPolicy policy = EncodingPolicy::Utf8Strict);
ParsedCorpus parse_export(std::istream& in, EncodingPolicy policy = EncodingPolicy::Utf8Strict);
ParsedCorpus parse_export_file(const std::filesystem::path& path,
                               EncodingPolicy policy = EncodingPolicy::Utf8Strict);

// Renders records back to the export format (inverse of parse_export for
// records without unknown fields).
std::string render_export(const std::vector<Record>& records);

struct DedupeResult {
    std::vector<Record> records;
    size_t removed = 0;
};

// Drops records whose accession_id was already seen, keeping the first.
DedupeResult dedupe(std::vector<Record> records);

// Canonical record format: one JSON object per line, UTF-8, keys sorted.
std::string to_canonical_line(const Record& record);
Record from_canonical_line(std::string_view line);
void write_canonical(std::ostream& out, const std::vector<Record>& records);
std::vector<Record> read_canonical(std::istream& in);

} // namespace fronts
