#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scholar/corpus.hpp"
#include "scholar/ranking.hpp"

namespace scholar {

struct CareerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CareerProfile {
    std::string author_id;
    int first_year = 0;
    int last_year = 0;
    int period = 0;  // last - first + 1
    std::map<int, int> yearly_counts;
    int total_papers = 0;
};

struct SpeedMetrics {
    std::map<int, double> productive_scores;
    int bursty_year = 0;
    int burst_speed = 0;  // bursty_year - first_year
    int half_speed = 0;
};

CareerProfile career_profile(const CorpusSnapshot& c, const std::string& author_id);

/// Yearly publication share minus the uniform baseline 1/period.
/// Years without papers count as zero share; t must lie inside the period.
double productive_score(const CareerProfile& p, int year);

/// Earliest year maximizing the productive score, and its offset from the
/// first publication year.
std::pair<int, int> burst_speed(const CareerProfile& p);

/// Calendar years elapsed from the first publication until cumulative output
/// reaches half the total. Gap years advance the count.
int half_speed(const CareerProfile& p);

SpeedMetrics speed_metrics(const CareerProfile& p);

/// Sum of ordinal venue scores over the author's papers. Unranked papers
/// contribute 0 under Exclude and 1 under ScoreOne.
int v_index(const CorpusSnapshot& c, const RankingTable& ranking,
            const std::string& author_id,
            UnrankedPolicy policy = UnrankedPolicy::Exclude);

int h_index_of(std::vector<int> citations);
int g_index_of(std::vector<int> citations);
int h_index(const CorpusSnapshot& c, const std::string& author_id);
int g_index(const CorpusSnapshot& c, const std::string& author_id);

struct ExploratoryReport {
    std::map<int, int> first_year_counts;   // year -> #authors starting then
    std::map<int, int> last_year_counts;    // year -> #authors ending then
    std::map<int, int> period_histogram;    // period length -> #authors
    std::map<int, int> burst_speed_histogram;  // over the filtered cohort
    std::map<int, int> half_speed_histogram;
    std::map<int, int> bursty_year_counts;

    // filtered-cohort aggregates (period >= min_period)
    int min_period = 0;
    int cohort_size = 0;
    double avg_papers = 0;
    double avg_period = 0;
    double avg_productive_score = 0;  // mean of per-author peak scores
    double avg_burst_speed = 0;
    double avg_half_speed = 0;
    int modal_bursty_year = 0;

    // publication count -> (avg period, avg burst speed, avg half speed)
    std::map<int, std::array<double, 3>> by_publication_count;

    // v-index summary over authors with at least one ranked paper
    int v_index_min = 0;
    int v_index_max = 0;
    double v_index_mean = 0;
    double v_index_median = 0;

    std::string to_json() const;
    void write_tsv(const std::string& dir) const;  // one file per histogram
};

ExploratoryReport exploratory_report(const CorpusSnapshot& c, const RankingTable& ranking,
                                     int min_period);

}  // namespace scholar
