#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scholar/alignment.hpp"
#include "scholar/corpus.hpp"
#include "scholar/ranking.hpp"
#include "scholar/topics.hpp"
#include "scholar/trajectory.hpp"

namespace scholar {

struct CompareError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CandidateFilter {
    int min_period = 10;
    int min_papers = 1;
    std::optional<std::vector<std::string>> allowlist;
};

struct Neighbor {
    std::string author_id;
    double distance;
};

struct ComparableSet {
    std::string query;
    AlignMode mode = AlignMode::Categorical;
    int k = 20;
    std::vector<Neighbor> neighbors;  // (distance asc, author_id asc), length <= k
    double mean_distance = 0;
    double min_distance = 0;
    double max_distance = 0;

    std::string to_json() const;
};

struct CompareOptions {
    AlignmentConfig align;
    UnrankedPolicy unranked = UnrankedPolicy::Exclude;
    const TopicVectorStore* topics = nullptr;  // required for topic modes
    int jobs = 1;
};

/// Authors passing every filter clause, sorted ascending by id. Only authors
/// with at least one scoreable paper qualify; an explicit (possibly empty)
/// allowlist restricts the pool further.
std::vector<std::string> candidate_pool(const CorpusSnapshot& c, const RankingTable& ranking,
                                        const CandidateFilter& f,
                                        UnrankedPolicy unranked = UnrankedPolicy::Exclude);

/// Distance between two authors under the chosen mode. Prefix modes treat the
/// first author as the senior.
double author_distance(const CorpusSnapshot& c, const RankingTable& ranking,
                       const std::string& a, const std::string& b,
                       const CompareOptions& opt);

ComparableSet top_k_comparable(const CorpusSnapshot& c, const RankingTable& ranking,
                               const std::string& query_id, int k,
                               const CandidateFilter& f, const CompareOptions& opt);

struct AllPairsOptions {
    CompareOptions compare;
    // warn when the number of pairs exceeds this
    long long pair_budget = 10'000'000;
    // test hook: stop (as if killed) after this many completed rows; 0 = off
    int interrupt_after_rows = 0;
};

/// Streamed upper-triangle pair distances, one TSV record per pair, with a
/// row-granular checkpoint (output + ".ckpt") making the run resumable.
/// Returns the number of pair records written in this run.
long long all_pairs(const CorpusSnapshot& c, const RankingTable& ranking,
                    const CandidateFilter& f, const std::string& output_path,
                    const AllPairsOptions& opt);

}  // namespace scholar
