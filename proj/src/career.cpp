#include "scholar/career.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace scholar {

using nlohmann::json;

CareerProfile career_profile(const CorpusSnapshot& c, const std::string& author_id) {
    CareerProfile p;
    p.author_id = author_id;
    auto papers = c.author_papers(author_id);
    if (papers.empty()) throw CareerError("author " + author_id + " has no dated papers");
    p.first_year = papers.front().year;
    p.last_year = papers.back().year;
    p.period = p.last_year - p.first_year + 1;
    for (const auto& paper : papers) p.yearly_counts[paper.year] += 1;
    p.total_papers = static_cast<int>(papers.size());
    return p;
}

double productive_score(const CareerProfile& p, int year) {
    if (year < p.first_year || year > p.last_year)
        throw CareerError("year " + std::to_string(year) + " outside research period of " +
                          p.author_id);
    auto it = p.yearly_counts.find(year);
    int count = it == p.yearly_counts.end() ? 0 : it->second;
    return static_cast<double>(count) / p.total_papers - 1.0 / p.period;
}

std::pair<int, int> burst_speed(const CareerProfile& p) {
    int best_year = p.first_year;
    double best = productive_score(p, p.first_year);
    for (int y = p.first_year + 1; y <= p.last_year; ++y) {
        double v = productive_score(p, y);
        if (v > best) {  // ties keep the earliest year
            best = v;
            best_year = y;
        }
    }
    return {best_year, best_year - p.first_year};
}

int half_speed(const CareerProfile& p) {
    const double half = p.total_papers / 2.0;
    int cum = 0;
    for (int y = p.first_year; y <= p.last_year; ++y) {
        auto it = p.yearly_counts.find(y);
        if (it != p.yearly_counts.end()) cum += it->second;
        if (cum >= half) return y - p.first_year;
    }
    throw CareerError("unreachable: cumulative count never reached half");
}

SpeedMetrics speed_metrics(const CareerProfile& p) {
    SpeedMetrics m;
    for (int y = p.first_year; y <= p.last_year; ++y)
        m.productive_scores[y] = productive_score(p, y);
    auto [year, speed] = burst_speed(p);
    m.bursty_year = year;
    m.burst_speed = speed;
    m.half_speed = half_speed(p);
    return m;
}

int v_index(const CorpusSnapshot& c, const RankingTable& ranking,
            const std::string& author_id, UnrankedPolicy policy) {
    int sum = 0;
    for (const auto& paper : c.author_papers(author_id)) {
        auto s = ranking.score_of(paper.venue_key);
        if (s)
            sum += *s;
        else if (policy == UnrankedPolicy::ScoreOne)
            sum += 1;
    }
    return sum;
}

int h_index_of(std::vector<int> citations) {
    std::sort(citations.begin(), citations.end(), std::greater<>());
    int h = 0;
    for (size_t i = 0; i < citations.size(); ++i)
        if (citations[i] >= static_cast<int>(i) + 1) h = static_cast<int>(i) + 1;
    return h;
}

int g_index_of(std::vector<int> citations) {
    std::sort(citations.begin(), citations.end(), std::greater<>());
    long long sum = 0;
    int g = 0;
    for (size_t i = 0; i < citations.size(); ++i) {
        sum += citations[i];
        long long rank = static_cast<long long>(i) + 1;
        if (sum >= rank * rank) g = static_cast<int>(rank);
    }
    return g;
}

namespace {
std::vector<int> citation_vector(const CorpusSnapshot& c, const std::string& author_id) {
    std::vector<int> out;
    for (const auto& paper : c.author_papers(author_id)) {
        if (!paper.citation_count)
            throw CareerError("paper " + paper.paper_id + " of author " + author_id +
                              " has no citation count");
        out.push_back(*paper.citation_count);
    }
    return out;
}
}  // namespace

int h_index(const CorpusSnapshot& c, const std::string& author_id) {
    return h_index_of(citation_vector(c, author_id));
}

int g_index(const CorpusSnapshot& c, const std::string& author_id) {
    return g_index_of(citation_vector(c, author_id));
}

ExploratoryReport exploratory_report(const CorpusSnapshot& c, const RankingTable& ranking,
                                     int min_period) {
    ExploratoryReport r;
    r.min_period = min_period;

    double sum_papers = 0, sum_period = 0, sum_peak = 0, sum_burst = 0, sum_half = 0;
    std::map<int, std::array<double, 4>> by_count;  // count -> (n, period, burst, half)
    std::vector<int> v_indices;

    for (const auto& [id, a] : c.authors()) {
        CareerProfile p = career_profile(c, id);
        r.first_year_counts[p.first_year] += 1;
        r.last_year_counts[p.last_year] += 1;
        r.period_histogram[p.period] += 1;

        int vi = v_index(c, ranking, id);
        if (vi > 0) v_indices.push_back(vi);

        if (p.period < min_period) continue;
        r.cohort_size += 1;
        auto [by, bs] = burst_speed(p);
        int hs = half_speed(p);
        r.burst_speed_histogram[bs] += 1;
        r.half_speed_histogram[hs] += 1;
        r.bursty_year_counts[by] += 1;
        sum_papers += p.total_papers;
        sum_period += p.period;
        sum_peak += productive_score(p, by);
        sum_burst += bs;
        sum_half += hs;
        auto& acc = by_count[p.total_papers];
        acc[0] += 1;
        acc[1] += p.period;
        acc[2] += bs;
        acc[3] += hs;
    }

    if (r.cohort_size > 0) {
        r.avg_papers = sum_papers / r.cohort_size;
        r.avg_period = sum_period / r.cohort_size;
        r.avg_productive_score = sum_peak / r.cohort_size;
        r.avg_burst_speed = sum_burst / r.cohort_size;
        r.avg_half_speed = sum_half / r.cohort_size;
        int best = 0;
        for (const auto& [y, n] : r.bursty_year_counts)
            if (n > best) {
                best = n;
                r.modal_bursty_year = y;
            }
    }
    for (const auto& [count, acc] : by_count)
        r.by_publication_count[count] = {acc[1] / acc[0], acc[2] / acc[0], acc[3] / acc[0]};

    if (!v_indices.empty()) {
        std::sort(v_indices.begin(), v_indices.end());
        r.v_index_min = v_indices.front();
        r.v_index_max = v_indices.back();
        r.v_index_mean =
            std::accumulate(v_indices.begin(), v_indices.end(), 0.0) / v_indices.size();
        size_t n = v_indices.size();
        r.v_index_median = n % 2 ? v_indices[n / 2]
                                 : (v_indices[n / 2 - 1] + v_indices[n / 2]) / 2.0;
    }
    return r;
}

namespace {

json histogram_json(const std::map<int, int>& h) {
    json j = json::object();
    for (const auto& [k, v] : h) j[std::to_string(k)] = v;
    return j;
}

void write_histogram_tsv(const std::filesystem::path& path, const char* key_name,
                         const std::map<int, int>& h) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CareerError("cannot write " + path.string());
    out << key_name << "\tcount\n";
    for (const auto& [k, v] : h) out << k << "\t" << v << "\n";
}

}  // namespace

std::string ExploratoryReport::to_json() const {
    json j;
    j["min_period"] = min_period;
    j["cohort_size"] = cohort_size;
    j["first_year_counts"] = histogram_json(first_year_counts);
    j["last_year_counts"] = histogram_json(last_year_counts);
    j["period_histogram"] = histogram_json(period_histogram);
    j["burst_speed_histogram"] = histogram_json(burst_speed_histogram);
    j["half_speed_histogram"] = histogram_json(half_speed_histogram);
    j["bursty_year_counts"] = histogram_json(bursty_year_counts);
    j["averages"] = {{"papers", avg_papers},
                     {"period", avg_period},
                     {"productive_score", avg_productive_score},
                     {"burst_speed", avg_burst_speed},
                     {"half_speed", avg_half_speed}};
    j["modal_bursty_year"] = modal_bursty_year;
    json bpc = json::object();
    for (const auto& [count, v] : by_publication_count)
        bpc[std::to_string(count)] = {{"avg_period", v[0]},
                                      {"avg_burst_speed", v[1]},
                                      {"avg_half_speed", v[2]}};
    j["by_publication_count"] = bpc;
    j["v_index"] = {{"min", v_index_min},
                    {"max", v_index_max},
                    {"mean", v_index_mean},
                    {"median", v_index_median}};
    return j.dump(2) + "\n";
}

void ExploratoryReport::write_tsv(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_histogram_tsv(fs::path(dir) / "first_year.tsv", "year", first_year_counts);
    write_histogram_tsv(fs::path(dir) / "last_year.tsv", "year", last_year_counts);
    write_histogram_tsv(fs::path(dir) / "period.tsv", "period", period_histogram);
    write_histogram_tsv(fs::path(dir) / "burst_speed.tsv", "burst_speed",
                        burst_speed_histogram);
    write_histogram_tsv(fs::path(dir) / "half_speed.tsv", "half_speed",
                        half_speed_histogram);
    write_histogram_tsv(fs::path(dir) / "bursty_year.tsv", "year", bursty_year_counts);
    std::ofstream out(fs::path(dir) / "by_publication_count.tsv", std::ios::trunc);
    out << "papers\tavg_period\tavg_burst_speed\tavg_half_speed\n";
    for (const auto& [count, v] : by_publication_count)
        out << count << "\t" << v[0] << "\t" << v[1] << "\t" << v[2] << "\n";
}

}  // namespace scholar
