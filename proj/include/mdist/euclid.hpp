#pragma once

#include <optional>
#include <vector>

#include "mdist/lottery.hpp"
#include "mdist/lp.hpp"
#include "mdist/metric.hpp"
#include "mdist/profile.hpp"

namespace mdist {

/// Points on a line realising a profile with strict preferences.
struct LineEmbedding {
    std::vector<std::size_t> axis;            // alternatives left to right
    std::vector<double> alternative_positions;  // indexed by alternative
    std::vector<double> voter_positions;        // indexed by voter
    double margin = 1.0;                        // strict separation used in recovery

    MetricSpace metric(const PreferenceProfile& profile) const;
    /// Voters sorted by (position, index).
    std::vector<std::size_t> voter_order() const;
};

inline constexpr std::size_t kMaxRecognitionAlternatives = 8;

/// Tries every axis order up to reversal (the lexicographically smaller of the
/// two reversals, in lexicographic order) and returns the first with a feasible
/// separation LP. Throws ValidationError when m exceeds the enumeration budget.
std::optional<LineEmbedding> recognize_1d(const PreferenceProfile& profile, LpAudit* audit = nullptr);

/// Picks between the median voter's favourite X and its heavier axis neighbour
/// with alpha_gpts on their pairwise counts; a missing neighbour counts as 0.
Lottery algorithm1(const PreferenceProfile& profile, double alpha, const LineEmbedding& embedding);
/// Recognises the profile first; throws ValidationError if it is not 1-Euclidean.
Lottery algorithm1(const PreferenceProfile& profile, double alpha);

}  // namespace mdist
