#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fronts {

std::string to_upper_ascii(std::string_view s);
std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Fixed-point formatting via std::to_chars: locale-independent, correctly
// rounded (ties to even on the binary value).
std::string fmt_fixed(double x, int precision = 6);

// Escapes \, tab, newline, ';' and '|' so list-valued table cells survive a
// round trip. unescape_field inverts it.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

std::string xml_escape(std::string_view s);

// FNV-1a 64-bit, hex-encoded. Used as the input digest in run manifests.
std::string fnv1a_hex(std::string_view bytes);

} // namespace fronts
