#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "scholar/corpus.hpp"
#include "scholar/ranking.hpp"

namespace scholar {

struct TrajectoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScoreEntry {
    int year;
    int score;  // 1..5
    std::string paper_id;
};

/// One author's trajectory: year-ascending, score-descending within a year,
/// paper_id as the final tie-break so rebuilds are deterministic.
struct VenueScoreSequence {
    std::string author_id;
    std::vector<ScoreEntry> entries;

    std::vector<int> scores() const;
    std::string to_jsonl_line() const;
};

/// Multiset of venue scores per publication year; counts[s] is the number of
/// score-s papers. Gap years produce no entries.
struct YearEntry {
    int year;
    std::array<int, 6> counts;  // index 1..5 used
};

struct YearlySetSequence {
    std::string author_id;
    std::vector<YearEntry> entries;
};

VenueScoreSequence build_score_sequence(const CorpusSnapshot& c, const RankingTable& ranking,
                                        const std::string& author_id,
                                        UnrankedPolicy policy = UnrankedPolicy::Exclude);

YearlySetSequence build_set_sequence(const CorpusSnapshot& c, const RankingTable& ranking,
                                     const std::string& author_id,
                                     UnrankedPolicy policy = UnrankedPolicy::Exclude);

}  // namespace scholar
