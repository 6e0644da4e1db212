#include "doctest.h"
#include "fixtures.hpp"
#include "scholar/trajectory.hpp"

using namespace scholar;
using testutil::TempDir;
using testutil::paper;
using testutil::ranking_of;
using testutil::snapshot_of;

TEST_CASE("score sequence is year-ascending, score-descending within a year") {
    TempDir dir("traj");
    auto t = ranking_of(dir, {{"top", "A+"}, {"good", "A"}, {"mid", "B"}});
    auto c = snapshot_of({paper("p1", "A", 2001, "mid", {"A A"}),
                          paper("p2", "B", 2001, "top", {"A A"}),
                          paper("p3", "C", 2002, "good", {"A A"})});
    auto seq = build_score_sequence(c, t, "a a");
    CHECK(seq.scores() == std::vector<int>{5, 3, 4});

    auto one = snapshot_of({paper("p1", "A", 2001, "top", {"B B"})});
    CHECK(build_score_sequence(one, t, "b b").scores() == std::vector<int>{5});
}

TEST_CASE("all papers unranked raises an empty-sequence error by default") {
    TempDir dir("traj_unranked");
    auto t = ranking_of(dir, {{"top", "A+"}});
    auto c = snapshot_of({paper("p1", "A", 2001, "obscure", {"A A"})});
    CHECK_THROWS_AS(build_score_sequence(c, t, "a a"), TrajectoryError);
    // score1 policy keeps them at score 1
    CHECK(build_score_sequence(c, t, "a a", UnrankedPolicy::ScoreOne).scores() ==
          std::vector<int>{1});
}

TEST_CASE("set sequence groups score multisets per publication year") {
    TempDir dir("traj_sets");
    auto t = ranking_of(dir, {{"top", "A+"}, {"low", "C"}});
    auto c = snapshot_of({paper("p1", "A", 2001, "top", {"A A"}),
                          paper("p2", "B", 2001, "top", {"A A"}),
                          paper("p3", "C", 2002, "low", {"A A"})});
    auto seq = build_set_sequence(c, t, "a a");
    REQUIRE(seq.entries.size() == 2);
    CHECK(seq.entries[0].year == 2001);
    CHECK(seq.entries[0].counts[5] == 2);
    CHECK(seq.entries[1].year == 2002);
    CHECK(seq.entries[1].counts[2] == 1);
}

TEST_CASE("gap years produce no empty set entries") {
    TempDir dir("traj_gap");
    auto t = ranking_of(dir, {{"v", "B"}});
    auto c = snapshot_of({paper("p1", "A", 2001, "v", {"A A"}),
                          paper("p2", "B", 2005, "v", {"A A"})});
    auto seq = build_set_sequence(c, t, "a a");
    CHECK(seq.entries.size() == 2);
    // years strictly increasing
    CHECK(seq.entries[0].year < seq.entries[1].year);
}

TEST_CASE("score multiset equals the union of the yearly multisets") {
    TempDir dir("traj_consist");
    auto t = ranking_of(dir, {{"a", "A+"}, {"b", "A"}, {"c", "B"}, {"d", "C"}});
    auto c = snapshot_of({paper("p1", "A", 2001, "a", {"X X"}),
                          paper("p2", "B", 2001, "c", {"X X"}),
                          paper("p3", "C", 2003, "b", {"X X"}),
                          paper("p4", "D", 2003, "d", {"X X"}),
                          paper("p5", "E", 2003, "d", {"X X"})});
    auto flat = build_score_sequence(c, t, "x x");
    auto sets = build_set_sequence(c, t, "x x");
    std::array<int, 6> from_flat{}, from_sets{};
    for (const auto& e : flat.entries) from_flat[static_cast<size_t>(e.score)] += 1;
    for (const auto& y : sets.entries)
        for (size_t s = 1; s <= 5; ++s) from_sets[s] += y.counts[s];
    CHECK(from_flat == from_sets);
}

TEST_CASE("rebuild is deterministic, serialization byte-identical") {
    TempDir dir("traj_determ");
    auto t = ranking_of(dir, {{"v", "A"}, {"w", "A"}});
    // equal (year, score): paper_id breaks the tie
    auto c = snapshot_of({paper("pb", "A", 2001, "v", {"A A"}),
                          paper("pa", "B", 2001, "w", {"A A"})});
    auto s1 = build_score_sequence(c, t, "a a");
    auto s2 = build_score_sequence(c, t, "a a");
    CHECK(s1.to_jsonl_line() == s2.to_jsonl_line());
    CHECK(s1.entries[0].paper_id == "pa");
}
