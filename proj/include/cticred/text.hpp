#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace cticred {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Collapses whitespace runs to single spaces and trims the ends.
inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

// Lowercase word tokens, split on non-alphanumeric runs.
inline std::vector<std::string> tokenize_words(std::string_view s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : s) {
        if (is_alnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

inline const std::unordered_set<std::string>& default_abbreviations() {
    static const std::unordered_set<std::string> abbrevs = {
        "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc",
        "inc", "ltd", "corp", "co", "dept", "approx", "est", "fig", "eq",
        "al", "cf", "resp", "no", "ver", "rev",
    };
    return abbrevs;
}

// Rule-based sentence splitter. Deterministic rules:
//  - newlines are hard sentence boundaries
//  - '.', '!', '?' (plus trailing quotes/brackets) end a sentence when
//    followed by whitespace or end of text
//  - a '.' does not split when the preceding token is a known abbreviation,
//    or is a single letter preceded by another '.' (acronyms like "e.g.")
inline std::vector<std::string> split_sentences(std::string_view text) {
    const auto& abbrevs = default_abbreviations();
    std::vector<std::string> sentences;
    std::string cur;

    auto flush = [&] {
        std::string s = trim(cur);
        if (!s.empty()) sentences.push_back(std::move(s));
        cur.clear();
    };

    auto preceding_token = [&]() -> std::string {
        std::size_t e = cur.size() - 1; // skip the '.' just pushed
        std::size_t b = e;
        while (b > 0 && is_alnum(cur[b - 1])) --b;
        return to_lower(std::string_view(cur).substr(b, e - b));
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n' || c == '\r') {
            flush();
            continue;
        }
        cur.push_back(c);
        if (c != '.' && c != '!' && c != '?') continue;

        // consume runs like "..." or "?!" as one terminator
        std::size_t next = i + 1;
        while (next < text.size() && (text[next] == '.' || text[next] == '!' || text[next] == '?')) {
            cur.push_back(text[next]);
            ++next;
        }
        // closing quotes/brackets stay with the sentence
        while (next < text.size() &&
               (text[next] == '"' || text[next] == '\'' || text[next] == ')' || text[next] == ']')) {
            cur.push_back(text[next]);
            ++next;
        }
        bool at_end = next >= text.size();
        bool followed_by_space = !at_end && is_space(text[next]);
        bool splits = at_end || followed_by_space;
        if (splits && c == '.' && next == i + 1) {
            std::string tok = preceding_token();
            if (abbrevs.count(tok) > 0) {
                splits = false;
            } else if (tok.size() == 1 && !is_digit(tok[0])) {
                // single letter: part of an acronym or an initial
                std::size_t before = cur.size() - 2; // char before the token
                if (before >= 1 && cur[before - 1] == '.') splits = false;
                else if (before == 0) splits = false;
            }
        }
        i = next - 1;
        if (splits) flush();
    }
    flush();
    return sentences;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

// Accepts "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS" with optional trailing "Z".
// Returns seconds since the Unix epoch (UTC).
inline std::optional<std::int64_t> parse_timestamp(std::string_view s) {
    std::string t = trim(s);
    if (!t.empty() && (t.back() == 'Z' || t.back() == 'z')) t.pop_back();
    auto num = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        if (pos + len > t.size()) return std::nullopt;
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (!is_digit(t[i])) return std::nullopt;
            v = v * 10 + (t[i] - '0');
        }
        return v;
    };
    if (t.size() != 10 && t.size() != 19) return std::nullopt;
    auto y = num(0, 4), mo = num(5, 2), d = num(8, 2);
    if (!y || !mo || !d || t[4] != '-' || t[7] != '-') return std::nullopt;
    int hh = 0, mi = 0, ss = 0;
    if (t.size() == 19) {
        if (t[10] != 'T' && t[10] != ' ') return std::nullopt;
        auto h2 = num(11, 2), m2 = num(14, 2), s2 = num(17, 2);
        if (!h2 || !m2 || !s2 || t[13] != ':' || t[16] != ':') return std::nullopt;
        hh = *h2; mi = *m2; ss = *s2;
    }
    using namespace std::chrono;
    year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + hh * 3600 + mi * 60 + ss;
}

inline std::string format_timestamp(std::int64_t epoch_seconds) {
    using namespace std::chrono;
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) { rem += 86400; --days; }
    year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                  static_cast<int>((rem % 3600) / 60), static_cast<int>(rem % 60));
    return std::string(buf);
}

} // namespace cticred
