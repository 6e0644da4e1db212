#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "scholar/career.hpp"

using namespace scholar;
using testutil::TempDir;
using testutil::paper;
using testutil::ranking_of;
using testutil::snapshot_of;

namespace {

// Author with the given per-year counts starting at 2000.
CorpusSnapshot author_with_counts(const std::vector<int>& counts) {
    std::vector<PaperRecord> papers;
    int n = 0;
    for (size_t y = 0; y < counts.size(); ++y)
        for (int i = 0; i < counts[y]; ++i)
            papers.push_back(paper("p" + std::to_string(n++), "T" + std::to_string(n),
                                   2000 + static_cast<int>(y), "v", {"A A"}));
    return snapshot_of(std::move(papers));
}

// brute-force oracles
int h_oracle(std::vector<int> c) {
    int best = 0;
    for (int h = 0; h <= static_cast<int>(c.size()); ++h) {
        int have = 0;
        for (int x : c)
            if (x >= h) ++have;
        if (have >= h) best = std::max(best, h);
    }
    return best;
}

int g_oracle(std::vector<int> c) {
    std::sort(c.begin(), c.end(), std::greater<>());
    int best = 0;
    for (int g = 1; g <= static_cast<int>(c.size()); ++g) {
        long long sum = 0;
        for (int i = 0; i < g; ++i) sum += c[static_cast<size_t>(i)];
        if (sum >= static_cast<long long>(g) * g) best = g;
    }
    return best;
}

}  // namespace

TEST_CASE("career profile fields") {
    auto c = snapshot_of({paper("p1", "A", 2000, "v", {"A A"}),
                          paper("p2", "B", 2005, "v", {"A A"}),
                          paper("p3", "C", 2009, "v", {"A A"})});
    auto p = career_profile(c, "a a");
    CHECK(p.first_year == 2000);
    CHECK(p.last_year == 2009);
    CHECK(p.period == 10);
    CHECK(p.total_papers == 3);

    auto single = author_with_counts({1});
    CHECK(career_profile(single, "a a").period == 1);

    auto multi = snapshot_of({paper("p1", "A", 2001, "v", {"A A"}),
                              paper("p2", "B", 2001, "v", {"A A"}),
                              paper("p3", "C", 2003, "v", {"A A"})});
    auto mp = career_profile(multi, "a a");
    CHECK(mp.yearly_counts == std::map<int, int>{{2001, 2}, {2003, 1}});
}

TEST_CASE("productive score evaluates the definition") {
    auto single = career_profile(author_with_counts({1}), "a a");
    CHECK(productive_score(single, 2000) == doctest::Approx(0.0));

    auto p = career_profile(author_with_counts({1, 3, 1}), "a a");
    CHECK(productive_score(p, 2001) == doctest::Approx(3.0 / 5 - 1.0 / 3));  // 4/15

    auto gap = career_profile(author_with_counts({2, 0, 2}), "a a");
    CHECK(productive_score(gap, 2001) == doctest::Approx(-1.0 / 3));

    CHECK_THROWS_AS(productive_score(p, 1999), CareerError);
}

TEST_CASE("burst speed picks the earliest argmax") {
    auto p = career_profile(author_with_counts({1, 3, 1}), "a a");
    auto [year, speed] = burst_speed(p);
    CHECK(year == 2001);
    CHECK(speed == 1);

    auto front = career_profile(author_with_counts({4, 1}), "a a");
    CHECK(burst_speed(front).second == 0);

    auto tie = career_profile(author_with_counts({2, 2}), "a a");
    CHECK(burst_speed(tie).second == 0);
}

TEST_CASE("half speed counts elapsed calendar years") {
    auto p = career_profile(author_with_counts({1, 1, 2}), "a a");
    CHECK(half_speed(p) == 1);  // cumulative [1,2,4]; 2 >= 2 in year index 1

    auto fast = career_profile(author_with_counts({3, 1}), "a a");
    CHECK(half_speed(fast) == 0);

    auto single = career_profile(author_with_counts({1}), "a a");
    CHECK(half_speed(single) == 0);

    // gap years advance the count
    auto gap = career_profile(author_with_counts({1, 0, 0, 3}), "a a");
    CHECK(half_speed(gap) == 3);
}

TEST_CASE("productive scores over the full period sum to zero") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> years(1, 12), cnt(0, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> counts(static_cast<size_t>(years(rng)));
        for (auto& x : counts) x = cnt(rng);
        if (counts.front() == 0) counts.front() = 1;
        if (counts.back() == 0) counts.back() = 1;
        auto p = career_profile(author_with_counts(counts), "a a");
        double sum = 0;
        for (int y = p.first_year; y <= p.last_year; ++y) sum += productive_score(p, y);
        CHECK(sum == doctest::Approx(0.0).epsilon(1e-9));
        auto m = speed_metrics(p);
        CHECK(m.burst_speed >= 0);
        CHECK(m.burst_speed <= p.period - 1);
        CHECK(m.half_speed >= 0);
        CHECK(m.half_speed <= p.period - 1);
    }
}

TEST_CASE("v-index sums ordinal scores of ranked papers") {
    TempDir dir("vindex");
    auto t = ranking_of(dir, {{"stoc", "A+"}, {"icde", "A"}, {"mid", "B"}});
    auto c = snapshot_of({paper("p1", "A", 2001, "stoc", {"A A"}),
                          paper("p2", "B", 2002, "icde", {"A A"}),
                          paper("p3", "C", 2003, "mid", {"A A"}),
                          paper("p4", "D", 2004, "unranked", {"A A"})});
    CHECK(v_index(c, t, "a a") == 12);
    CHECK(v_index(c, t, "a a", UnrankedPolicy::ScoreOne) == 13);

    auto none = snapshot_of({paper("p1", "A", 2001, "obscure", {"B B"})});
    CHECK(v_index(none, t, "b b") == 0);

    // monotone: adding a ranked paper strictly increases it
    auto more = snapshot_of({paper("p1", "A", 2001, "stoc", {"A A"}),
                             paper("p2", "B", 2002, "icde", {"A A"}),
                             paper("p3", "C", 2003, "mid", {"A A"}),
                             paper("p4", "D", 2004, "unranked", {"A A"}),
                             paper("p5", "E", 2005, "mid", {"A A"})});
    CHECK(v_index(more, t, "a a") > v_index(c, t, "a a"));
}

TEST_CASE("h and g index fixtures and brute-force oracle") {
    CHECK(h_index_of({10, 8, 5, 4, 3}) == 4);
    CHECK(g_index_of({10, 8, 5, 4, 3}) == 5);  // top 5 sum 30 >= 25
    CHECK(h_index_of({0, 0}) == 0);
    CHECK(g_index_of({0, 0}) == 0);

    std::mt19937 rng(42);
    std::uniform_int_distribution<int> len(1, 20), cites(0, 40);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> v(static_cast<size_t>(len(rng)));
        for (auto& x : v) x = cites(rng);
        CHECK(h_index_of(v) == h_oracle(v));
        CHECK(g_index_of(v) == g_oracle(v));
        CHECK(h_index_of(v) <= static_cast<int>(v.size()));
        CHECK(g_index_of(v) >= h_index_of(v));
    }
}

TEST_CASE("h index requires citation data") {
    auto c = snapshot_of({paper("p1", "A", 2001, "v", {"A A"})});
    CHECK_THROWS_AS(h_index(c, "a a"), CareerError);
    auto with = snapshot_of({paper("p1", "A", 2001, "v", {"A A"}, std::nullopt, 5)});
    CHECK(h_index(with, "a a") == 1);
    CHECK(g_index(with, "a a") == 1);  // capped at the paper count
}

TEST_CASE("exploratory report histograms and filtering") {
    TempDir dir("report");
    auto t = ranking_of(dir, {{"v", "B"}});
    auto c = snapshot_of({
        paper("p1", "A", 2001, "v", {"Long Career"}),
        paper("p2", "B", 2012, "v", {"Long Career"}),
        paper("p3", "C", 2001, "v", {"Short One"}),
        paper("p4", "D", 2003, "v", {"Short One"}),
        paper("p5", "E", 2002, "v", {"Third Person"}),
    });
    auto r = exploratory_report(c, t, 10);
    CHECK(r.first_year_counts == std::map<int, int>{{2001, 2}, {2002, 1}});
    CHECK(r.cohort_size == 1);  // only the 12-year career passes min_period 10
    CHECK(r.avg_period == doctest::Approx(12.0));
    CHECK(r.burst_speed_histogram.size() == 1);

    TempDir out("report_out");
    r.write_tsv(out.path().string());
    CHECK(std::filesystem::exists(out.path() / "first_year.tsv"));
    CHECK(r.to_json().find("cohort_size") != std::string::npos);
}
