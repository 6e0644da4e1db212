#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "scholar/alignment.hpp"

using namespace scholar;

namespace {

// Exhaustive-recursion oracle for the unit-cost distance; independent of the
// DP implementation. Only usable for short sequences.
int edit_oracle(const std::vector<int>& s, const std::vector<int>& r, size_t i, size_t j) {
    if (i == s.size()) return static_cast<int>(r.size() - j);
    if (j == r.size()) return static_cast<int>(s.size() - i);
    int best = edit_oracle(s, r, i + 1, j + 1) + (s[i] == r[j] ? 0 : 1);
    best = std::min(best, edit_oracle(s, r, i + 1, j) + 1);
    best = std::min(best, edit_oracle(s, r, i, j + 1) + 1);
    return best;
}

VenueScoreSequence make_seq(const std::string& author, const std::vector<int>& scores) {
    VenueScoreSequence seq;
    seq.author_id = author;
    for (size_t i = 0; i < scores.size(); ++i)
        seq.entries.push_back(
            {2000 + static_cast<int>(i), scores[i], author + "_p" + std::to_string(i)});
    return seq;
}

YearlySetSequence make_sets(const std::vector<std::vector<int>>& years) {
    YearlySetSequence seq;
    seq.author_id = "x";
    for (size_t i = 0; i < years.size(); ++i) {
        YearEntry e{2000 + static_cast<int>(i), {}};
        for (int s : years[i]) e.counts[static_cast<size_t>(s)] += 1;
        seq.entries.push_back(e);
    }
    return seq;
}

const PaperSim kSimOne = [](const std::string&, const std::string&) { return 1.0; };
const PaperSim kSimZero = [](const std::string&, const std::string&) { return 0.0; };

}  // namespace

TEST_CASE("worked categorical example gives distance 2") {
    std::vector<int> s{5, 4, 4, 3, 4}, r{5, 4, 5, 4};
    CHECK(edit_distance_categorical(s, r).distance == 2.0);
}

TEST_CASE("categorical identity and boundary cases") {
    std::vector<int> s{5, 4, 3};
    CHECK(edit_distance_categorical(s, s).distance == 0.0);
    std::vector<int> two{5, 4}, empty;
    CHECK(edit_distance_categorical(two, empty).distance == 2.0);
    CHECK(edit_distance_categorical(empty, two).distance == 2.0);
    CHECK(edit_distance_categorical(empty, empty).distance == 0.0);
}

TEST_CASE("categorical DP matches the exhaustive oracle") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 250; ++trial) {
        auto s = testutil::random_scores(rng, 6);
        auto r = testutil::random_scores(rng, 6);
        int expected = edit_oracle(s, r, 0, 0);
        CHECK(edit_distance_categorical(s, r).distance == static_cast<double>(expected));
    }
}

TEST_CASE("categorical distance is a metric on random triples") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 120; ++trial) {
        auto a = testutil::random_scores(rng, 8);
        auto b = testutil::random_scores(rng, 8);
        auto c = testutil::random_scores(rng, 8);
        double ab = edit_distance_categorical(a, b).distance;
        double ba = edit_distance_categorical(b, a).distance;
        double bc = edit_distance_categorical(b, c).distance;
        double ac = edit_distance_categorical(a, c).distance;
        CHECK(edit_distance_categorical(a, a).distance == 0.0);
        CHECK(ab == ba);
        CHECK(ac <= ab + bc);
    }
}

TEST_CASE("categorical traceback recomputes the distance") {
    std::vector<int> s{5, 4, 4, 3, 4}, r{5, 4, 5, 4};
    auto res = edit_distance_categorical(s, r, true);
    REQUIRE(res.ops.has_value());
    CHECK(res.traceback_cost() == res.distance);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = testutil::random_scores(rng, 7);
        auto b = testutil::random_scores(rng, 7);
        auto tb = edit_distance_categorical(a, b, true);
        CHECK(tb.traceback_cost() == tb.distance);
    }
}

TEST_CASE("jaccard cell costs follow the multiset formula") {
    // {5,4} vs {5,3}: intersection 1, union 3 -> cost 2/3
    auto s = make_sets({{5, 4}});
    auto r = make_sets({{5, 3}});
    CHECK(edit_distance_jaccard(s, r).distance == doctest::Approx(2.0 / 3));
    // repeated scores: {5,5} vs {5}: 1 - 1/2
    CHECK(edit_distance_jaccard(make_sets({{5, 5}}), make_sets({{5}})).distance ==
          doctest::Approx(0.5));
    // set vs gap costs 1
    CHECK(edit_distance_jaccard(make_sets({{5, 4}}), make_sets({})).distance == 1.0);
    // identical sequences
    auto same = make_sets({{5, 4}, {3}});
    CHECK(edit_distance_jaccard(same, same).distance == 0.0);
}

TEST_CASE("jaccard distance is symmetric and bounded by max length") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<size_t> years(0, 5), papers(1, 3);
    std::uniform_int_distribution<int> score(1, 5);
    for (int trial = 0; trial < 120; ++trial) {
        auto gen = [&] {
            std::vector<std::vector<int>> ys(years(rng));
            for (auto& y : ys) {
                y.resize(papers(rng));
                for (auto& s : y) s = score(rng);
            }
            return make_sets(ys);
        };
        auto s = gen(), r = gen();
        double d = edit_distance_jaccard(s, r).distance;
        double rev = edit_distance_jaccard(r, s).distance;
        CHECK(d == doctest::Approx(rev).epsilon(1e-12));
        CHECK(d >= 0.0);
        CHECK(d <= static_cast<double>(std::max(s.entries.size(), r.entries.size())));
    }
}

TEST_CASE("topic worked case: single entries 5 vs 4 at sim 0.5 give 0.55") {
    auto s = make_seq("a", {5});
    auto r = make_seq("b", {4});
    PaperSim half = [](const std::string&, const std::string&) { return 0.5; };
    auto res = topic_edit_distance(s, r, half);
    CHECK(res.distance == doctest::Approx(0.55).epsilon(1e-12));
}

TEST_CASE("topic distance is 0 for identical papers with sim 1") {
    auto s = make_seq("a", {5, 3, 4});
    CHECK(topic_edit_distance(s, s, kSimOne).distance == doctest::Approx(0.0));
}

TEST_CASE("equal scores with sim 0 cost epsilon per match") {
    auto s = make_seq("a", {4, 4, 4});
    auto r = make_seq("b", {4, 4, 4});
    CHECK(topic_edit_distance(s, r, kSimZero).distance ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("topic gap costs are the venue scores") {
    auto s = make_seq("a", {5, 4});
    auto r = make_seq("b", {});
    CHECK(topic_edit_distance(s, r, kSimZero).distance == doctest::Approx(9.0));
    CHECK(topic_edit_distance(r, s, kSimZero).distance == doctest::Approx(9.0));
}

TEST_CASE("literal venue cost keeps the printed asymmetric form") {
    auto s = make_seq("a", {5});
    auto r = make_seq("b", {4});
    AlignmentConfig cfg;
    cfg.venue_cost = VenueCostForm::Literal;
    PaperSim half = [](const std::string&, const std::string&) { return 0.5; };
    // |5-4+0.1| * 0.5 = 0.55 but |4-5+0.1| * 0.5 = 0.45
    CHECK(topic_edit_distance(s, r, half, cfg).distance == doctest::Approx(0.55));
    CHECK(topic_edit_distance(r, s, half, cfg).distance == doctest::Approx(0.45));
}

TEST_CASE("canonical topic distance is symmetric on random pairs") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> simval(0.0, 1.0);
    for (int trial = 0; trial < 120; ++trial) {
        auto a = make_seq("a", testutil::random_scores(rng, 6));
        auto b = make_seq("b", testutil::random_scores(rng, 6));
        // deterministic symmetric sim keyed on the id pair
        PaperSim sim = [](const std::string& x, const std::string& y) {
            auto h = std::hash<std::string>{}(x < y ? x + y : y + x);
            return static_cast<double>(h % 1000) / 999.0;
        };
        double ab = topic_edit_distance(a, b, sim).distance;
        double ba = topic_edit_distance(b, a, sim).distance;
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        double score_sum = 0;
        for (const auto& e : a.entries) score_sum += e.score;
        for (const auto& e : b.entries) score_sum += e.score;
        CHECK(ab <= score_sum + 1e-12);
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("sim outside [0,1] is rejected") {
    auto s = make_seq("a", {5});
    auto r = make_seq("b", {4});
    PaperSim bad = [](const std::string&, const std::string&) { return 1.5; };
    CHECK_THROWS_AS(topic_edit_distance(s, r, bad), AlignmentError);
}

TEST_CASE("prefix distance: exact prefix scores zero") {
    std::vector<int> senior{5, 4, 3, 2}, junior{5, 4};
    auto res = prefix_distance_categorical(senior, junior);
    CHECK(res.distance == 0.0);
    CHECK(res.prefix_length == 2);
}

TEST_CASE("prefix distance hand-checked and boundary cases") {
    std::vector<int> senior{3, 3}, junior{5, 4};
    auto res = prefix_distance_categorical(senior, junior);
    CHECK(res.distance == 2.0);
    CHECK(res.prefix_length == 0);  // smallest minimizing k

    std::vector<int> empty, one{5};
    auto e = prefix_distance_categorical(empty, one);
    CHECK(e.distance == 1.0);
    CHECK(e.prefix_length == 0);
}

TEST_CASE("prefix distance never exceeds the full edit distance") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 120; ++trial) {
        auto s = testutil::random_scores(rng, 8);
        auto r = testutil::random_scores(rng, 8);
        double full = edit_distance_categorical(s, r).distance;
        double pre = prefix_distance_categorical(s, r).distance;
        CHECK(pre <= full);
        // extending the senior with a suffix never increases the minimum
        auto ext = s;
        ext.push_back(3);
        CHECK(prefix_distance_categorical(ext, r).distance <= pre);
    }
}

TEST_CASE("topic prefix agrees with the minimum over explicit prefixes") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = make_seq("a", testutil::random_scores(rng, 5));
        auto r = make_seq("b", testutil::random_scores(rng, 5));
        auto res = prefix_distance_topic(s, r, kSimZero);
        double best = 1e100;
        for (size_t k = 0; k <= s.entries.size(); ++k) {
            VenueScoreSequence pre;
            pre.author_id = "a";
            pre.entries.assign(s.entries.begin(),
                               s.entries.begin() + static_cast<long>(k));
            best = std::min(best, topic_edit_distance(pre, r, kSimZero).distance);
        }
        CHECK(res.distance == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("mode parsing round-trips") {
    for (auto m : {AlignMode::Categorical, AlignMode::Jaccard, AlignMode::Topic,
                   AlignMode::CategoricalPrefix, AlignMode::TopicPrefix})
        CHECK(parse_align_mode(align_mode_name(m)) == m);
    CHECK_THROWS_AS(parse_align_mode("bogus"), AlignmentError);
}
