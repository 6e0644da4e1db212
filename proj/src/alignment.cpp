#include "scholar/alignment.hpp"

#include <algorithm>
#include <cmath>

namespace scholar {

AlignMode parse_align_mode(const std::string& s) {
    if (s == "categorical") return AlignMode::Categorical;
    if (s == "jaccard") return AlignMode::Jaccard;
    if (s == "topic") return AlignMode::Topic;
    if (s == "categorical_prefix") return AlignMode::CategoricalPrefix;
    if (s == "topic_prefix") return AlignMode::TopicPrefix;
    throw AlignmentError("unknown alignment mode '" + s + "'");
}

std::string align_mode_name(AlignMode m) {
    switch (m) {
        case AlignMode::Categorical: return "categorical";
        case AlignMode::Jaccard: return "jaccard";
        case AlignMode::Topic: return "topic";
        case AlignMode::CategoricalPrefix: return "categorical_prefix";
        case AlignMode::TopicPrefix: return "topic_prefix";
    }
    throw AlignmentError("invalid mode");
}

bool is_prefix_mode(AlignMode m) {
    return m == AlignMode::CategoricalPrefix || m == AlignMode::TopicPrefix;
}

bool is_symmetric_mode(AlignMode m) {
    return m == AlignMode::Categorical || m == AlignMode::Jaccard ||
           m == AlignMode::Topic;
}

double AlignmentResult::traceback_cost() const {
    double total = 0;
    if (ops)
        for (const auto& op : *ops) total += op.cost;
    return total;
}

namespace {

// Full DP table; row 0 / column 0 hold the gap-prefix boundaries.
template <class Sub, class DelS, class InsR>
std::vector<std::vector<double>> dp_table(size_t n, size_t m, Sub sub, DelS del_s,
                                          InsR ins_r) {
    std::vector<std::vector<double>> d(n + 1, std::vector<double>(m + 1, 0.0));
    for (size_t i = 1; i <= n; ++i) d[i][0] = d[i - 1][0] + del_s(i - 1);
    for (size_t j = 1; j <= m; ++j) d[0][j] = d[0][j - 1] + ins_r(j - 1);
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = 1; j <= m; ++j)
            d[i][j] = std::min({d[i - 1][j - 1] + sub(i - 1, j - 1),
                                d[i - 1][j] + del_s(i - 1), d[i][j - 1] + ins_r(j - 1)});
    return d;
}

template <class Sub, class DelS, class InsR>
double dp_distance(size_t n, size_t m, Sub sub, DelS del_s, InsR ins_r) {
    std::vector<double> prev(m + 1), cur(m + 1);
    prev[0] = 0;
    for (size_t j = 1; j <= m; ++j) prev[j] = prev[j - 1] + ins_r(j - 1);
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = prev[0] + del_s(i - 1);
        for (size_t j = 1; j <= m; ++j)
            cur[j] = std::min({prev[j - 1] + sub(i - 1, j - 1), prev[j] + del_s(i - 1),
                               cur[j - 1] + ins_r(j - 1)});
        std::swap(prev, cur);
    }
    return prev[m];
}

template <class Sub, class DelS, class InsR>
std::vector<AlignOp> dp_traceback(const std::vector<std::vector<double>>& d, Sub sub,
                                  DelS del_s, InsR ins_r) {
    std::vector<AlignOp> ops;
    size_t i = d.size() - 1, j = d[0].size() - 1;
    const double tiny = 1e-12;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0) {
            double c = sub(i - 1, j - 1);
            if (std::abs(d[i][j] - (d[i - 1][j - 1] + c)) <= tiny) {
                ops.push_back({c == 0.0 ? OpKind::Match : OpKind::Substitute,
                               static_cast<int>(i), static_cast<int>(j), c});
                --i;
                --j;
                continue;
            }
        }
        if (i > 0) {
            double c = del_s(i - 1);
            if (std::abs(d[i][j] - (d[i - 1][j] + c)) <= tiny) {
                ops.push_back({OpKind::Delete, static_cast<int>(i), 0, c});
                --i;
                continue;
            }
        }
        double c = ins_r(j - 1);
        ops.push_back({OpKind::Insert, 0, static_cast<int>(j), c});
        --j;
    }
    std::reverse(ops.begin(), ops.end());
    return ops;
}

template <class Sub, class DelS, class InsR>
AlignmentResult run_dp(size_t n, size_t m, Sub sub, DelS del_s, InsR ins_r,
                       bool traceback) {
    AlignmentResult res;
    if (!traceback) {
        res.distance = dp_distance(n, m, sub, del_s, ins_r);
        return res;
    }
    auto d = dp_table(n, m, sub, del_s, ins_r);
    res.distance = d[n][m];
    res.ops = dp_traceback(d, sub, del_s, ins_r);
    return res;
}

double jaccard_cell(const YearEntry& a, const YearEntry& b) {
    int inter = 0, uni = 0;
    for (size_t s = 1; s <= 5; ++s) {
        inter += std::min(a.counts[s], b.counts[s]);
        uni += std::max(a.counts[s], b.counts[s]);
    }
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

struct TopicCosts {
    const VenueScoreSequence& s;
    const VenueScoreSequence& r;
    const PaperSim& sim;
    const AlignmentConfig& cfg;

    double sub(size_t i, size_t j) const {
        double sv = sim(s.entries[i].paper_id, r.entries[j].paper_id);
        if (sv < 0.0 || sv > 1.0)
            throw AlignmentError("similarity " + std::to_string(sv) + " outside [0,1]");
        double w = 1.0 - sv;
        double gap = cfg.venue_cost == VenueCostForm::CanonicalSymmetric
                         ? std::abs(static_cast<double>(s.entries[i].score) -
                                    r.entries[j].score) +
                               cfg.epsilon
                         : std::abs(static_cast<double>(s.entries[i].score) -
                                    r.entries[j].score + cfg.epsilon);
        return gap * w;
    }
    double del_s(size_t i) const { return s.entries[i].score; }
    double ins_r(size_t j) const { return r.entries[j].score; }
};

}  // namespace

AlignmentResult edit_distance_categorical(std::span<const int> s, std::span<const int> r,
                                          bool traceback) {
    if (!traceback) {
        // int rolling rows; this path carries the all-pairs workload
        size_t n = s.size(), m = r.size();
        std::vector<int> prev(m + 1), cur(m + 1);
        for (size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
        for (size_t i = 1; i <= n; ++i) {
            cur[0] = static_cast<int>(i);
            for (size_t j = 1; j <= m; ++j) {
                int sub = prev[j - 1] + (s[i - 1] == r[j - 1] ? 0 : 1);
                cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
            }
            std::swap(prev, cur);
        }
        AlignmentResult res;
        res.distance = prev[m];
        return res;
    }
    auto sub = [&](size_t i, size_t j) { return s[i] == r[j] ? 0.0 : 1.0; };
    auto one = [](size_t) { return 1.0; };
    return run_dp(s.size(), r.size(), sub, one, one, true);
}

AlignmentResult edit_distance_jaccard(const YearlySetSequence& s, const YearlySetSequence& r,
                                      bool traceback) {
    auto sub = [&](size_t i, size_t j) { return jaccard_cell(s.entries[i], r.entries[j]); };
    auto one = [](size_t) { return 1.0; };  // any set against the empty set
    return run_dp(s.entries.size(), r.entries.size(), sub, one, one, traceback);
}

AlignmentResult topic_edit_distance(const VenueScoreSequence& s, const VenueScoreSequence& r,
                                    const PaperSim& sim, const AlignmentConfig& cfg) {
    if (cfg.epsilon <= 0) throw AlignmentError("epsilon must be positive");
    TopicCosts costs{s, r, sim, cfg};
    auto sub = [&](size_t i, size_t j) { return costs.sub(i, j); };
    auto del_s = [&](size_t i) { return costs.del_s(i); };
    auto ins_r = [&](size_t j) { return costs.ins_r(j); };
    return run_dp(s.entries.size(), r.entries.size(), sub, del_s, ins_r, cfg.traceback);
}

namespace {

// Shared prefix logic: the junior fills the columns, every senior prefix is a
// row; answer is the column-m minimum with the smallest k winning ties.
template <class Sub, class DelS, class InsR>
AlignmentResult prefix_min(size_t n, size_t m, Sub sub, DelS del_s, InsR ins_r) {
    auto d = dp_table(n, m, sub, del_s, ins_r);
    AlignmentResult res;
    res.distance = d[0][m];
    res.prefix_length = 0;
    for (size_t k = 1; k <= n; ++k)
        if (d[k][m] < res.distance) {
            res.distance = d[k][m];
            res.prefix_length = static_cast<int>(k);
        }
    return res;
}

}  // namespace

AlignmentResult prefix_distance_categorical(std::span<const int> senior,
                                            std::span<const int> junior) {
    auto sub = [&](size_t i, size_t j) { return senior[i] == junior[j] ? 0.0 : 1.0; };
    auto one = [](size_t) { return 1.0; };
    return prefix_min(senior.size(), junior.size(), sub, one, one);
}

AlignmentResult prefix_distance_topic(const VenueScoreSequence& senior,
                                      const VenueScoreSequence& junior, const PaperSim& sim,
                                      const AlignmentConfig& cfg) {
    if (cfg.epsilon <= 0) throw AlignmentError("epsilon must be positive");
    TopicCosts costs{senior, junior, sim, cfg};
    auto sub = [&](size_t i, size_t j) { return costs.sub(i, j); };
    auto del_s = [&](size_t i) { return costs.del_s(i); };
    auto ins_r = [&](size_t j) { return costs.ins_r(j); };
    return prefix_min(senior.entries.size(), junior.entries.size(), sub, del_s, ins_r);
}

}  // namespace scholar
