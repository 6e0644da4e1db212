#include "scholar/text.hpp"

#include <cctype>
#include <sstream>

namespace scholar {

namespace {

bool is_alnum(unsigned char c) { return std::isalnum(c) != 0; }

std::vector<std::string> split_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : s) {
        if (is_alnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

bool all_digits(const std::string& t) {
    for (unsigned char c : t)
        if (!std::isdigit(c)) return false;
    return !t.empty();
}

}  // namespace

std::string normalize_text(std::string_view s) { return join(split_tokens(s)); }

std::string normalize_venue_key(std::string_view s) {
    auto tokens = split_tokens(s);
    // drop trailing volume markers and years: "vldb 2004", "sigmod vol 3"
    while (!tokens.empty()) {
        const std::string& last = tokens.back();
        if (all_digits(last) || last == "vol" || last == "volume" || last == "no" ||
            last == "part") {
            tokens.pop_back();
        } else {
            break;
        }
    }
    return join(tokens);
}

std::string normalize_title(std::string_view s) { return normalize_text(s); }

std::string normalize_author_name(std::string_view s) { return normalize_text(s); }

std::vector<std::string> tokenize(std::string_view s) { return split_tokens(s); }

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace scholar
