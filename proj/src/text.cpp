#include "tabex/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace tabex {

namespace {

bool is_collapsible_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
           c == U'\v' || c == U' ';
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

std::vector<char32_t> utf8_decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        if (len > 1) {
            if (i + len > s.size()) {
                out.push_back(0xFFFD);
                ++i;
                continue;
            }
            bool ok = true;
            for (std::size_t k = 1; k < len; ++k) {
                unsigned char bk = static_cast<unsigned char>(s[i + k]);
                if ((bk & 0xC0) != 0x80) {
                    ok = false;
                    break;
                }
                cp = (cp << 6) | (bk & 0x3F);
            }
            if (!ok || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
                out.push_back(0xFFFD);
                ++i;
                continue;
            }
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

std::size_t utf8_length(std::string_view s) { return utf8_decode(s).size(); }

std::size_t levenshtein(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<std::size_t> row(m + 1);
    for (std::size_t j = 0; j <= m; ++j) row[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t keep = diag;
            diag = row[j];
            if (a[i - 1] == b[j - 1]) {
                row[j] = keep;
            } else {
                row[j] = 1 + std::min({keep, row[j], row[j - 1]});
            }
        }
    }
    return row[m];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    return levenshtein(utf8_decode(a), utf8_decode(b));
}

std::size_t lcs_length(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) return 0;
    std::vector<std::size_t> row(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t diag = 0;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t keep = diag;
            diag = row[j];
            row[j] = (a[i - 1] == b[j - 1]) ? keep + 1 : std::max(row[j], row[j - 1]);
        }
    }
    return row[m];
}

std::size_t lcs_length(std::string_view a, std::string_view b) {
    return lcs_length(utf8_decode(a), utf8_decode(b));
}

std::string collapse_whitespace(std::string_view s) {
    std::vector<char32_t> cps = utf8_decode(s);
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    bool seen_content = false;
    for (char32_t c : cps) {
        if (is_collapsible_space(c)) {
            pending_space = seen_content;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, c);
        seen_content = true;
    }
    return out;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool iequals_ascii(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::string html_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string html_unescape(std::string_view s) {
    static const std::array<std::pair<std::string_view, std::string_view>, 6> kNamed = {{
        {"amp", "&"},
        {"lt", "<"},
        {"gt", ">"},
        {"quot", "\""},
        {"apos", "'"},
        {"nbsp", " "},
    }};
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view body = s.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            std::string_view digits = body.substr(1);
            int base = 10;
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                base = 16;
                digits = digits.substr(1);
            }
            char32_t cp = 0;
            bool ok = !digits.empty();
            for (char d : digits) {
                int v;
                if (d >= '0' && d <= '9') v = d - '0';
                else if (base == 16 && d >= 'a' && d <= 'f') v = d - 'a' + 10;
                else if (base == 16 && d >= 'A' && d <= 'F') v = d - 'A' + 10;
                else { ok = false; break; }
                cp = cp * base + static_cast<char32_t>(v);
                if (cp > 0x10FFFF) { ok = false; break; }
            }
            if (ok && !(cp >= 0xD800 && cp <= 0xDFFF)) {
                append_utf8(out, cp == 0 ? 0xFFFD : cp);
                i = semi + 1;
                continue;
            }
        } else {
            bool matched = false;
            for (const auto& [name, repl] : kNamed) {
                if (body == name) {
                    out += repl;
                    i = semi + 1;
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
        }
        out.push_back(s[i++]);
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace tabex
