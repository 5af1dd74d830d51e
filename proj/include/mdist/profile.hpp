#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdist {

/// Raised when an input document, profile, metric or instance breaks an invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Ranking = std::vector<std::size_t>;  // alternative indices, most preferred first

/// n strict total orders over m alternatives. Immutable after construction.
class PreferenceProfile {
public:
    PreferenceProfile(std::vector<std::string> alternatives, std::vector<Ranking> rankings);
    PreferenceProfile(std::vector<std::string> alternatives,
                      const std::vector<std::vector<std::string>>& rankings);

    std::size_t num_voters() const { return rankings_.size(); }
    std::size_t num_alternatives() const { return alternatives_.size(); }
    const std::vector<std::string>& alternatives() const { return alternatives_; }
    const std::string& name(std::size_t alt) const { return alternatives_.at(alt); }
    const std::vector<Ranking>& rankings() const { return rankings_; }
    const Ranking& ranking(std::size_t voter) const { return rankings_.at(voter); }

    std::size_t index_of(const std::string& alternative) const;
    std::size_t top(std::size_t voter) const { return rankings_[voter].front(); }
    /// 0-based rank of `alt` in the voter's order.
    std::size_t position(std::size_t voter, std::size_t alt) const {
        return positions_[voter * alternatives_.size() + alt];
    }
    bool prefers(std::size_t voter, std::size_t a, std::size_t b) const {
        return position(voter, a) < position(voter, b);
    }

    /// Compact form "A>B>C;B>A>C;..." used in reports and witness references.
    std::string to_string() const;
    static PreferenceProfile from_string(const std::string& text);

    bool operator==(const PreferenceProfile& other) const {
        return alternatives_ == other.alternatives_ && rankings_ == other.rankings_;
    }

private:
    std::vector<std::string> alternatives_;
    std::vector<Ranking> rankings_;
    std::vector<std::size_t> positions_;
};

/// |Y*| for every alternative Y (indexed by alternative).
std::vector<int> top_counts(const PreferenceProfile& profile);

/// counts[X][Y] = number of voters ranking X above Y; counts[X][X] = 0.
std::vector<std::vector<int>> pairwise_counts(const PreferenceProfile& profile);

/// All m! rankings of m alternatives in lexicographic order.
std::vector<Ranking> all_rankings(std::size_t m);

/// Calls `visit` with every profile of n voters over m alternatives up to voter
/// permutation (rankings sorted by their lexicographic index).
template <class Visitor>
void for_each_canonical_profile(const std::vector<std::string>& alternatives, std::size_t n,
                                Visitor&& visit);

std::vector<std::string> default_alternative_names(std::size_t m);

template <class Visitor>
void for_each_canonical_profile(const std::vector<std::string>& alternatives, std::size_t n,
                                Visitor&& visit) {
    const auto orders = all_rankings(alternatives.size());
    std::vector<std::size_t> idx(n, 0);
    if (n == 0) return;
    while (true) {
        std::vector<Ranking> rankings;
        rankings.reserve(n);
        for (auto k : idx) rankings.push_back(orders[k]);
        visit(PreferenceProfile(alternatives, std::move(rankings)));
        // next non-decreasing index sequence
        std::size_t pos = n;
        while (pos > 0 && idx[pos - 1] + 1 == orders.size()) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < n; ++j) idx[j] = idx[pos - 1];
    }
}

}  // namespace mdist
