#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scholar/trajectory.hpp"

namespace scholar {

struct AlignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AlignMode { Categorical, Jaccard, Topic, CategoricalPrefix, TopicPrefix };

AlignMode parse_align_mode(const std::string& s);
std::string align_mode_name(AlignMode m);
bool is_prefix_mode(AlignMode m);
bool is_symmetric_mode(AlignMode m);

// The printed topic match cost |v_i - v_j + eps| is asymmetric; the default
// symmetrizes it to (|v_i - v_j| + eps). Literal keeps the printed form.
enum class VenueCostForm { CanonicalSymmetric, Literal };

struct AlignmentConfig {
    AlignMode mode = AlignMode::Categorical;
    double epsilon = 0.1;
    VenueCostForm venue_cost = VenueCostForm::CanonicalSymmetric;
    bool traceback = false;
};

enum class OpKind { Match, Substitute, Insert, Delete };

struct AlignOp {
    OpKind kind;
    int i;  // 1-based position in S consumed, 0 if none
    int j;  // 1-based position in R consumed, 0 if none
    double cost;
};

struct AlignmentResult {
    double distance = 0;
    std::optional<std::vector<AlignOp>> ops;
    std::optional<int> prefix_length;

    double traceback_cost() const;
};

/// Pairwise similarity of two papers by id, in [0,1].
using PaperSim = std::function<double(const std::string&, const std::string&)>;

/// Unit-cost Wagner-Fischer distance over venue scores compared only for
/// equality.
AlignmentResult edit_distance_categorical(std::span<const int> s, std::span<const int> r,
                                          bool traceback = false);

/// Same recurrence with per-year multiset Jaccard distance as the cell cost
/// and gap cost 1 (any set vs the empty set).
AlignmentResult edit_distance_jaccard(const YearlySetSequence& s, const YearlySetSequence& r,
                                      bool traceback = false);

/// Match cost couples the venue-score gap with topic distance 1 - sim;
/// insertions and deletions cost the skipped entry's venue score.
AlignmentResult topic_edit_distance(const VenueScoreSequence& s, const VenueScoreSequence& r,
                                    const PaperSim& sim, const AlignmentConfig& cfg = {});

/// Align the junior's full sequence against every prefix of the senior's and
/// take the minimum of the final DP column; smallest minimizing prefix wins
/// ties. Categorical base takes bare scores via the sequence scores().
AlignmentResult prefix_distance_categorical(std::span<const int> senior,
                                            std::span<const int> junior);
AlignmentResult prefix_distance_topic(const VenueScoreSequence& senior,
                                      const VenueScoreSequence& junior, const PaperSim& sim,
                                      const AlignmentConfig& cfg = {});

}  // namespace scholar
