#include "scholar/trajectory.hpp"

#include <algorithm>

#include "json.hpp"

namespace scholar {

namespace {

std::vector<ScoreEntry> scored_papers(const CorpusSnapshot& c, const RankingTable& ranking,
                                      const std::string& author_id, UnrankedPolicy policy) {
    std::vector<ScoreEntry> out;
    for (const auto& paper : c.author_papers(author_id)) {
        auto s = ranking.score_of(paper.venue_key);
        int score;
        if (s)
            score = *s;
        else if (policy == UnrankedPolicy::ScoreOne)
            score = 1;
        else
            continue;
        out.push_back({paper.year, score, paper.paper_id});
    }
    if (out.empty())
        throw TrajectoryError("author " + author_id +
                              " has no ranked papers; sequence would be empty");
    return out;
}

}  // namespace

std::vector<int> VenueScoreSequence::scores() const {
    std::vector<int> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.score);
    return out;
}

std::string VenueScoreSequence::to_jsonl_line() const {
    nlohmann::json seq = nlohmann::json::array();
    for (const auto& e : entries) seq.push_back({e.year, e.score, e.paper_id});
    return nlohmann::json{{"author", author_id}, {"seq", seq}}.dump();
}

VenueScoreSequence build_score_sequence(const CorpusSnapshot& c, const RankingTable& ranking,
                                        const std::string& author_id,
                                        UnrankedPolicy policy) {
    VenueScoreSequence seq;
    seq.author_id = author_id;
    seq.entries = scored_papers(c, ranking, author_id, policy);
    std::sort(seq.entries.begin(), seq.entries.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) {
                  if (a.year != b.year) return a.year < b.year;
                  if (a.score != b.score) return a.score > b.score;
                  return a.paper_id < b.paper_id;
              });
    return seq;
}

YearlySetSequence build_set_sequence(const CorpusSnapshot& c, const RankingTable& ranking,
                                     const std::string& author_id, UnrankedPolicy policy) {
    auto scored = scored_papers(c, ranking, author_id, policy);
    std::sort(scored.begin(), scored.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.year < b.year; });
    YearlySetSequence seq;
    seq.author_id = author_id;
    for (const auto& e : scored) {
        if (seq.entries.empty() || seq.entries.back().year != e.year)
            seq.entries.push_back({e.year, {}});
        seq.entries.back().counts[static_cast<size_t>(e.score)] += 1;
    }
    return seq;
}

}  // namespace scholar
