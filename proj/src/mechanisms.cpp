#include "mdist/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "mdist/euclid.hpp"
#include "mdist/tournament.hpp"

namespace mdist {

const char* to_string(MechanismId id) {
    switch (id) {
        case MechanismId::RandomizedDictatorship: return "rd";
        case MechanismId::Plurality: return "plurality";
        case MechanismId::ProportionalToSquares: return "pts";
        case MechanismId::AlphaGpts: return "gpts";
        case MechanismId::Copeland: return "copeland";
        case MechanismId::Condorcet: return "condorcet";
        case MechanismId::Majority: return "majority";
        case MechanismId::MinCover: return "mincover";
        case MechanismId::Algorithm1: return "algorithm1";
    }
    return "unknown";
}

MechanismId parse_mechanism(const std::string& text) {
    if (text == "rd" || text == "randomized_dictatorship") return MechanismId::RandomizedDictatorship;
    if (text == "plurality") return MechanismId::Plurality;
    if (text == "pts" || text == "proportional_to_squares") return MechanismId::ProportionalToSquares;
    if (text == "gpts" || text == "alpha_gpts") return MechanismId::AlphaGpts;
    if (text == "copeland") return MechanismId::Copeland;
    if (text == "condorcet") return MechanismId::Condorcet;
    if (text == "majority") return MechanismId::Majority;
    if (text == "mincover" || text == "min_cover") return MechanismId::MinCover;
    if (text == "algorithm1") return MechanismId::Algorithm1;
    throw ValidationError("unknown mechanism '" + text + "'");
}

namespace {

std::size_t first_argmax(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

Lottery randomized_dictatorship(const PreferenceProfile& profile) {
    const auto counts = top_counts(profile);
    return Lottery::from_weights(profile.alternatives(), std::vector<double>(counts.begin(), counts.end()));
}

Lottery plurality(const PreferenceProfile& profile) {
    const auto counts = top_counts(profile);
    return Lottery::point_mass(profile.alternatives(),
                               first_argmax(std::vector<double>(counts.begin(), counts.end())));
}

Lottery proportional_to_squares(const PreferenceProfile& profile) {
    std::vector<double> w;
    for (int c : top_counts(profile)) w.push_back(static_cast<double>(c) * c);
    return Lottery::from_weights(profile.alternatives(), w);
}

Lottery alpha_gpts(int count_x, int count_y, double alpha, std::string label_x, std::string label_y) {
    if (count_x < 0 || count_y < 0) throw ValidationError("counts must be non-negative");
    if (count_x + count_y == 0) throw ValidationError("alpha_gpts needs at least one voter");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0,1]");
    std::vector<std::string> labels{std::move(label_x), std::move(label_y)};
    if (count_x == count_y) return Lottery(std::move(labels), {0.5, 0.5});
    const double x = count_x, y = count_y;
    const double num_x = std::max(0.0, (1.0 + alpha) * x * x - (1.0 - alpha) * x * y);
    const double num_y = std::max(0.0, (1.0 + alpha) * y * y - (1.0 - alpha) * x * y);
    return Lottery::from_weights(std::move(labels), {num_x, num_y});
}

std::vector<double> copeland_scores(const PreferenceProfile& profile) {
    const std::size_t m = profile.num_alternatives();
    const auto counts = pairwise_counts(profile);
    std::vector<double> score(m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            if (counts[a][b] > counts[b][a]) score[a] += 1.0;
            else if (counts[a][b] == counts[b][a]) score[a] += 0.5;
        }
    return score;
}

Lottery copeland(const PreferenceProfile& profile) {
    return Lottery::point_mass(profile.alternatives(), first_argmax(copeland_scores(profile)));
}

CondorcetWinners condorcet_winners(const PreferenceProfile& profile) {
    const std::size_t m = profile.num_alternatives();
    const auto counts = pairwise_counts(profile);
    CondorcetWinners w;
    for (std::size_t a = 0; a < m; ++a) {
        bool strict = true, weak = true;
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            if (counts[a][b] <= counts[b][a]) strict = false;
            if (counts[a][b] < counts[b][a]) weak = false;
        }
        if (strict) w.strict = a;
        if (weak) w.weak.push_back(a);
    }
    return w;
}

std::optional<std::size_t> majority_winner(const PreferenceProfile& profile) {
    const auto counts = top_counts(profile);
    for (std::size_t a = 0; a < counts.size(); ++a)
        if (2 * static_cast<std::size_t>(counts[a]) > profile.num_voters()) return a;
    return std::nullopt;
}

Lottery apply_mechanism(const Mechanism& mechanism, const PreferenceProfile& profile, LpAudit* audit) {
    switch (mechanism.id) {
        case MechanismId::RandomizedDictatorship: return randomized_dictatorship(profile);
        case MechanismId::Plurality: return plurality(profile);
        case MechanismId::ProportionalToSquares: return proportional_to_squares(profile);
        case MechanismId::AlphaGpts: {
            if (profile.num_alternatives() != 2) throw ValidationError("gpts is defined for two alternatives");
            const auto counts = top_counts(profile);
            const auto pair = alpha_gpts(counts[0], counts[1], mechanism.alpha);
            return Lottery(profile.alternatives(), pair.probabilities());
        }
        case MechanismId::Copeland: return copeland(profile);
        case MechanismId::Condorcet: {
            const auto w = condorcet_winners(profile);
            if (w.strict) return Lottery::point_mass(profile.alternatives(), *w.strict);
            if (!w.weak.empty()) return Lottery::point_mass(profile.alternatives(), w.weak.front());
            return copeland(profile);
        }
        case MechanismId::Majority: {
            if (auto w = majority_winner(profile)) return Lottery::point_mass(profile.alternatives(), *w);
            return plurality(profile);
        }
        case MechanismId::MinCover: return min_cover_lottery(majority_graph(profile), audit).lottery;
        case MechanismId::Algorithm1: {
            const auto embedding = recognize_1d(profile, audit);
            if (!embedding) throw ValidationError("profile is not 1-Euclidean");
            return algorithm1(profile, mechanism.alpha, *embedding);
        }
    }
    throw ValidationError("unknown mechanism");
}

}  // namespace mdist
