#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdist/lottery.hpp"
#include "mdist/lp.hpp"
#include "mdist/profile.hpp"

namespace mdist {

enum class MechanismId {
    RandomizedDictatorship,
    Plurality,
    ProportionalToSquares,
    AlphaGpts,
    Copeland,
    Condorcet,
    Majority,
    MinCover,
    Algorithm1,
};

/// A mechanism together with its parameter; alpha is read by AlphaGpts and Algorithm1 only.
struct Mechanism {
    MechanismId id;
    double alpha = 1.0;
};

/// Short command-line name (rd, plurality, pts, gpts, ...).
const char* to_string(MechanismId id);
/// Accepts the short names and the long snake_case names.
MechanismId parse_mechanism(const std::string& text);

Lottery randomized_dictatorship(const PreferenceProfile& profile);
/// Point mass on the most frequent top choice; ties go to the earlier alternative.
Lottery plurality(const PreferenceProfile& profile);
Lottery proportional_to_squares(const PreferenceProfile& profile);

/// Two-label mechanism. Negative numerators are clamped to zero before
/// normalising; equal counts always give (1/2, 1/2).
Lottery alpha_gpts(int count_x, int count_y, double alpha, std::string label_x = "X",
                   std::string label_y = "Y");

/// Copeland score is wins + ties/2; point mass on the best, earliest on ties.
std::vector<double> copeland_scores(const PreferenceProfile& profile);
Lottery copeland(const PreferenceProfile& profile);

struct CondorcetWinners {
    std::optional<std::size_t> strict;
    std::vector<std::size_t> weak;  // ascending alternative order
};

CondorcetWinners condorcet_winners(const PreferenceProfile& profile);

/// The alternative ranked first by strictly more than n/2 voters, if any.
std::optional<std::size_t> majority_winner(const PreferenceProfile& profile);

/// Dispatches on the mechanism id. Deterministic rules return point masses:
///   condorcet: strict winner, else the first weak winner, else the Copeland winner;
///   majority:  majority winner, else the plurality winner.
/// AlphaGpts needs m = 2 and Algorithm1 a 1-Euclidean profile.
/// LP solves made on the way are recorded in `audit` when given.
Lottery apply_mechanism(const Mechanism& mechanism, const PreferenceProfile& profile,
                        LpAudit* audit = nullptr);

}  // namespace mdist
