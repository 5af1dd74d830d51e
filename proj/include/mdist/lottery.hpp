#pragma once

#include <string>
#include <vector>

#include "mdist/metric.hpp"

namespace mdist {

inline constexpr double kLotteryTolerance = 1e-12;

/// Probability distribution over a fixed list of alternatives.
class Lottery {
public:
    Lottery(std::vector<std::string> alternatives, std::vector<double> probabilities);

    static Lottery point_mass(std::vector<std::string> alternatives, std::size_t winner);
    static Lottery uniform(std::vector<std::string> alternatives);
    /// Normalises non-negative integer weights (at least one positive).
    static Lottery from_weights(std::vector<std::string> alternatives, const std::vector<double>& weights);

    const std::vector<std::string>& alternatives() const { return alternatives_; }
    const std::vector<double>& probabilities() const { return p_; }
    double operator[](std::size_t alt) const { return p_[alt]; }
    double probability(const std::string& alt) const;
    std::size_t size() const { return p_.size(); }

    /// Alternatives with positive probability.
    std::vector<std::size_t> support() const;

    std::string to_string(int precision = 4) const;

private:
    std::vector<std::string> alternatives_;
    std::vector<double> p_;
};

/// Sum over Y of p(Y) * social_cost(Y). Alternatives are matched by id.
double expected_social_cost(const Lottery& lottery, const MetricSpace& metric, Objective objective);

}  // namespace mdist
