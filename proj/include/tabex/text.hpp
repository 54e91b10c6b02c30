#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tabex {

// Unicode scalar values of a UTF-8 string; invalid bytes decode to U+FFFD.
std::vector<char32_t> utf8_decode(std::string_view s);

std::string utf8_encode(const std::vector<char32_t>& cps);

// Number of Unicode scalar values in s.
std::size_t utf8_length(std::string_view s);

// Levenshtein distance over Unicode scalar values (unit costs).
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(const std::vector<char32_t>& a, const std::vector<char32_t>& b);

// Longest common subsequence length over Unicode scalar values.
std::size_t lcs_length(std::string_view a, std::string_view b);
std::size_t lcs_length(const std::vector<char32_t>& a, const std::vector<char32_t>& b);

// Whitespace canonicalization: trim the ends and collapse internal runs of
// whitespace (ASCII whitespace plus U+00A0) to a single space.
std::string collapse_whitespace(std::string_view s);

std::string to_lower_ascii(std::string_view s);

bool iequals_ascii(std::string_view a, std::string_view b);

// Escape &, <, > for HTML text content.
std::string html_escape(std::string_view s);

// Decode character references: the common named entities plus numeric forms.
// Unrecognized references are kept verbatim.
std::string html_unescape(std::string_view s);

std::uint64_t fnv1a64(std::string_view s);

std::string to_hex(std::uint64_t v);

}  // namespace tabex
