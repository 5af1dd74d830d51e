#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdist/profile.hpp"

namespace mdist {

inline constexpr double kMetricTolerance = 1e-9;

enum class Objective { Sum, Median };

const char* to_string(Objective objective);
Objective parse_objective(const std::string& text);

/// Pseudo-metric over n voters followed by m alternatives.
///
/// Point indices: voter i is point i, alternative Y is point n + Y. Construction
/// validates symmetry, non-negativity, the zero diagonal and the triangle
/// inequality (tolerance 1e-9).
class MetricSpace {
public:
    MetricSpace(std::vector<std::string> voter_ids, std::vector<std::string> alternative_ids,
                std::vector<double> distances);

    /// Shortest-path completion from voter-alternative and alternative-alternative
    /// distances. Voter-voter distances become min over Y of d(i,Y) + d(j,Y).
    static MetricSpace from_bipartite(std::vector<std::string> voter_ids,
                                      std::vector<std::string> alternative_ids,
                                      const std::vector<std::vector<double>>& voter_alt,
                                      const std::vector<std::vector<double>>& alt_alt);

    static MetricSpace from_positions(std::vector<std::string> voter_ids,
                                      std::vector<std::string> alternative_ids,
                                      const std::vector<double>& voter_positions,
                                      const std::vector<double>& alternative_positions);

    std::size_t num_voters() const { return num_voters_; }
    std::size_t num_alternatives() const { return alternatives_.size(); }
    std::size_t num_points() const { return points_.size(); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<std::string>& alternatives() const { return alternatives_; }

    double operator()(std::size_t a, std::size_t b) const { return d_[a * points_.size() + b]; }
    double voter_alt(std::size_t voter, std::size_t alt) const {
        return (*this)(voter, num_voters_ + alt);
    }
    double alt_alt(std::size_t a, std::size_t b) const {
        return (*this)(num_voters_ + a, num_voters_ + b);
    }
    const std::vector<double>& matrix() const { return d_; }

    MetricSpace scaled(double factor) const;

private:
    std::size_t num_voters_;
    std::vector<std::string> points_;
    std::vector<std::string> alternatives_;
    std::vector<double> d_;
};

std::vector<std::string> default_voter_ids(std::size_t n);

/// Weak consistency: every voter's ranking is non-decreasing in distance.
bool is_consistent(const PreferenceProfile& profile, const MetricSpace& metric);

/// Smallest alpha for which the metric is alpha-decisive w.r.t. the profile's
/// first and second choices (0/0 counts as 0).
double decisiveness_alpha(const PreferenceProfile& profile, const MetricSpace& metric);

/// Rankings by ascending distance; ties broken by `tie_break` (a permutation of
/// alternative indices, earlier wins). Defaults to the metric's alternative order.
PreferenceProfile induced_profile(const MetricSpace& metric,
                                  const std::optional<std::vector<std::size_t>>& tie_break = {});

/// Sum of voter distances, or the (floor(n/2)+1)-th smallest voter distance.
double social_cost(const MetricSpace& metric, std::size_t alt, Objective objective);
double social_cost(const MetricSpace& metric, const std::string& alt, Objective objective);

/// Upper median of a list of values, the convention used throughout.
double upper_median(std::vector<double> values);

}  // namespace mdist
