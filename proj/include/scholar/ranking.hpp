#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "scholar/corpus.hpp"

namespace scholar {

struct RankingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VenueCategory { APlus, A, B, C, L };

// A+ -> 5 down to L -> 1. Categorical and ordinal interpretations share the
// integer; they differ only in how alignment costs consume it.
int category_score(VenueCategory c);
VenueCategory parse_category(const std::string& s);  // throws RankingError
std::string category_name(VenueCategory c);

enum class UnrankedPolicy { Exclude, ScoreOne };

class RankingTable {
  public:
    static RankingTable load_csv(const std::string& path);

    /// Score for a venue, normalizing the key first; absent when unranked.
    std::optional<int> score_of(const std::string& venue_key) const;
    std::optional<VenueCategory> category_of(const std::string& venue_key) const;

    /// Fraction of corpus papers published in ranked venues (0 for empty corpus).
    double coverage(const CorpusSnapshot& c) const;

    size_t size() const { return table_.size(); }
    const std::map<std::string, VenueCategory>& entries() const { return table_; }

  private:
    std::map<std::string, VenueCategory> table_;
};

}  // namespace scholar
