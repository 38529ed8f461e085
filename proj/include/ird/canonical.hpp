#pragma once

#include <string>
#include <string_view>

namespace ird {

// Canonical form for names and attribute keys: trimmed of ASCII whitespace,
// ASCII-lowercased. Input is expected to already be NFC-normalized UTF-8;
// non-ASCII bytes pass through unchanged. Idempotent.
inline std::string canonicalize(std::string_view s) {
    size_t b = 0, e = s.size();
    auto is_space = [](unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };
    while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out;
    out.reserve(e - b);
    for (size_t i = b; i < e; ++i) {
        char c = s[i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        out.push_back(c);
    }
    return out;
}

}  // namespace ird
