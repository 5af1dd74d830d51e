#include "mdist/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace mdist {

Lottery::Lottery(std::vector<std::string> alternatives, std::vector<double> probabilities)
    : alternatives_(std::move(alternatives)), p_(std::move(probabilities)) {
    if (alternatives_.size() != p_.size()) throw ValidationError("lottery size does not match alternatives");
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0) || v > 1.0) throw ValidationError("lottery probability outside [0,1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kLotteryTolerance) throw ValidationError("lottery probabilities do not sum to 1");
}

Lottery Lottery::point_mass(std::vector<std::string> alternatives, std::size_t winner) {
    std::vector<double> p(alternatives.size(), 0.0);
    p.at(winner) = 1.0;
    return Lottery(std::move(alternatives), std::move(p));
}

Lottery Lottery::uniform(std::vector<std::string> alternatives) {
    std::vector<double> w(alternatives.size(), 1.0);
    return from_weights(std::move(alternatives), w);
}

Lottery Lottery::from_weights(std::vector<std::string> alternatives, const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("negative lottery weight");
        total += w;
    }
    if (!(total > 0.0)) throw ValidationError("lottery weights are all zero");
    std::vector<double> p(weights.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = weights[k] / total;
    // Push the rounding residue onto the largest entry so the sum is 1 to the last ulp.
    const double residue = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
    auto big = std::max_element(p.begin(), p.end());
    *big = std::clamp(*big + residue, 0.0, 1.0);
    return Lottery(std::move(alternatives), std::move(p));
}

double Lottery::probability(const std::string& alt) const {
    auto it = std::find(alternatives_.begin(), alternatives_.end(), alt);
    if (it == alternatives_.end()) throw ValidationError("unknown alternative '" + alt + "'");
    return p_[static_cast<std::size_t>(it - alternatives_.begin())];
}

std::vector<std::size_t> Lottery::support() const {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < p_.size(); ++k)
        if (p_[k] > 0.0) s.push_back(k);
    return s;
}

std::string Lottery::to_string(int precision) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision);
    for (std::size_t k = 0; k < p_.size(); ++k) {
        if (k) os << ' ';
        os << alternatives_[k] << ':' << p_[k];
    }
    return os.str();
}

double expected_social_cost(const Lottery& lottery, const MetricSpace& metric, Objective objective) {
    double total = 0.0;
    for (std::size_t k = 0; k < lottery.size(); ++k) {
        if (lottery[k] == 0.0) {
            social_cost(metric, lottery.alternatives()[k], objective);  // still validates the id
            continue;
        }
        total += lottery[k] * social_cost(metric, lottery.alternatives()[k], objective);
    }
    return total;
}

}  // namespace mdist
