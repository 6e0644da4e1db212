#include "scholar/ranking.hpp"

#include <fstream>

#include "scholar/text.hpp"

namespace scholar {

int category_score(VenueCategory c) {
    switch (c) {
        case VenueCategory::APlus: return 5;
        case VenueCategory::A: return 4;
        case VenueCategory::B: return 3;
        case VenueCategory::C: return 2;
        case VenueCategory::L: return 1;
    }
    throw RankingError("invalid category");
}

VenueCategory parse_category(const std::string& s) {
    if (s == "A+") return VenueCategory::APlus;
    if (s == "A") return VenueCategory::A;
    if (s == "B") return VenueCategory::B;
    if (s == "C") return VenueCategory::C;
    if (s == "L") return VenueCategory::L;
    throw RankingError("unknown category '" + s + "' (expected A+, A, B, C or L)");
}

std::string category_name(VenueCategory c) {
    switch (c) {
        case VenueCategory::APlus: return "A+";
        case VenueCategory::A: return "A";
        case VenueCategory::B: return "B";
        case VenueCategory::C: return "C";
        case VenueCategory::L: return "L";
    }
    throw RankingError("invalid category");
}

namespace {
std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
}  // namespace

RankingTable RankingTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RankingError("cannot open " + path);
    RankingTable t;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string row = strip(line);
        if (row.empty()) continue;
        if (lineno == 1 && row == "venue,category") continue;
        size_t comma = row.rfind(',');
        if (comma == std::string::npos)
            throw RankingError(path + ":" + std::to_string(lineno) + ": expected venue,category");
        std::string key = normalize_venue_key(row.substr(0, comma));
        VenueCategory cat = parse_category(strip(row.substr(comma + 1)));
        if (key.empty())
            throw RankingError(path + ":" + std::to_string(lineno) + ": empty venue key");
        if (!t.table_.emplace(key, cat).second)
            throw RankingError(path + ":" + std::to_string(lineno) + ": duplicate venue '" +
                               key + "'");
    }
    return t;
}

std::optional<VenueCategory> RankingTable::category_of(const std::string& venue_key) const {
    auto it = table_.find(normalize_venue_key(venue_key));
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> RankingTable::score_of(const std::string& venue_key) const {
    auto c = category_of(venue_key);
    if (!c) return std::nullopt;
    return category_score(*c);
}

double RankingTable::coverage(const CorpusSnapshot& c) const {
    if (c.papers().empty()) return 0.0;
    size_t ranked = 0;
    for (const auto& [id, p] : c.papers())
        if (table_.count(p.venue_key)) ++ranked;
    return static_cast<double>(ranked) / static_cast<double>(c.papers().size());
}

}  // namespace scholar
