#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace scholar {

// Lowercase ASCII, replace punctuation with spaces, collapse whitespace.
std::string normalize_text(std::string_view s);

// Venue keys additionally drop trailing volume/number suffixes
// ("ICDE 2004" and "icde" map to the same key).
std::string normalize_venue_key(std::string_view s);

std::string normalize_title(std::string_view s);
std::string normalize_author_name(std::string_view s);

// Lowercased alphanumeric tokens, split on everything else.
std::vector<std::string> tokenize(std::string_view s);

const std::unordered_set<std::string>& default_stopwords();

// FNV-1a, used for file digests in manifests and checkpoints.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace scholar
