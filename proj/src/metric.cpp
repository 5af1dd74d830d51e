#include "mdist/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mdist {

const char* to_string(Objective objective) {
    return objective == Objective::Sum ? "sum" : "median";
}

Objective parse_objective(const std::string& text) {
    if (text == "sum") return Objective::Sum;
    if (text == "median") return Objective::Median;
    throw ValidationError("unknown objective '" + text + "'");
}

MetricSpace::MetricSpace(std::vector<std::string> voter_ids, std::vector<std::string> alternative_ids,
                         std::vector<double> distances)
    : num_voters_(voter_ids.size()), alternatives_(std::move(alternative_ids)), d_(std::move(distances)) {
    points_ = std::move(voter_ids);
    points_.insert(points_.end(), alternatives_.begin(), alternatives_.end());
    const std::size_t P = points_.size();
    if (alternatives_.empty()) throw ValidationError("metric needs at least one alternative");
    if (d_.size() != P * P) throw ValidationError("distance matrix is not square over the points");
    {
        auto ids = points_;
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw ValidationError("duplicate point id in metric");
    }
    for (std::size_t a = 0; a < P; ++a) {
        if (std::abs(d_[a * P + a]) > kMetricTolerance)
            throw ValidationError("nonzero self-distance at " + points_[a]);
        d_[a * P + a] = 0.0;
        for (std::size_t b = 0; b < P; ++b) {
            const double v = d_[a * P + b];
            if (!std::isfinite(v)) throw ValidationError("non-finite distance");
            if (v < -kMetricTolerance) throw ValidationError("negative distance between " + points_[a] + " and " + points_[b]);
            if (std::abs(v - d_[b * P + a]) > kMetricTolerance)
                throw ValidationError("asymmetric distance between " + points_[a] + " and " + points_[b]);
        }
    }
    for (auto& v : d_) v = std::max(v, 0.0);
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = 0; b < P; ++b)
            for (std::size_t c = 0; c < P; ++c)
                if (d_[a * P + c] > d_[a * P + b] + d_[b * P + c] + kMetricTolerance) {
                    std::ostringstream os;
                    os << "triangle inequality violated: d(" << points_[a] << "," << points_[c]
                       << ") > d(" << points_[a] << "," << points_[b] << ") + d(" << points_[b]
                       << "," << points_[c] << ")";
                    throw ValidationError(os.str());
                }
}

MetricSpace MetricSpace::from_bipartite(std::vector<std::string> voter_ids,
                                        std::vector<std::string> alternative_ids,
                                        const std::vector<std::vector<double>>& voter_alt,
                                        const std::vector<std::vector<double>>& alt_alt) {
    const std::size_t n = voter_ids.size(), m = alternative_ids.size(), P = n + m;
    std::vector<double> d(P * P, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t y = 0; y < m; ++y) d[i * P + n + y] = d[(n + y) * P + i] = voter_alt[i][y];
    for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = 0; z < m; ++z)
            if (y != z) d[(n + y) * P + n + z] = alt_alt[y][z];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double best = INFINITY;
            for (std::size_t y = 0; y < m; ++y) best = std::min(best, voter_alt[i][y] + voter_alt[j][y]);
            d[i * P + j] = best;
        }
    return MetricSpace(std::move(voter_ids), std::move(alternative_ids), std::move(d));
}

MetricSpace MetricSpace::from_positions(std::vector<std::string> voter_ids,
                                        std::vector<std::string> alternative_ids,
                                        const std::vector<double>& voter_positions,
                                        const std::vector<double>& alternative_positions) {
    if (voter_positions.size() != voter_ids.size() || alternative_positions.size() != alternative_ids.size())
        throw ValidationError("positions do not match the number of voters/alternatives");
    std::vector<double> x = voter_positions;
    x.insert(x.end(), alternative_positions.begin(), alternative_positions.end());
    const std::size_t P = x.size();
    std::vector<double> d(P * P);
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = 0; b < P; ++b) d[a * P + b] = std::abs(x[a] - x[b]);
    return MetricSpace(std::move(voter_ids), std::move(alternative_ids), std::move(d));
}

MetricSpace MetricSpace::scaled(double factor) const {
    std::vector<std::string> voters(points_.begin(), points_.begin() + static_cast<long>(num_voters_));
    auto d = d_;
    for (auto& v : d) v *= factor;
    return MetricSpace(std::move(voters), alternatives_, std::move(d));
}

std::vector<std::string> default_voter_ids(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
    return ids;
}

namespace {

void require_compatible(const PreferenceProfile& profile, const MetricSpace& metric) {
    if (profile.num_voters() != metric.num_voters() || profile.alternatives() != metric.alternatives())
        throw ValidationError("profile and metric disagree on voters or alternatives");
}

}  // namespace

bool is_consistent(const PreferenceProfile& profile, const MetricSpace& metric) {
    require_compatible(profile, metric);
    for (std::size_t i = 0; i < profile.num_voters(); ++i) {
        const auto& r = profile.ranking(i);
        for (std::size_t k = 0; k + 1 < r.size(); ++k)
            if (metric.voter_alt(i, r[k]) > metric.voter_alt(i, r[k + 1]) + kMetricTolerance) return false;
    }
    return true;
}

double decisiveness_alpha(const PreferenceProfile& profile, const MetricSpace& metric) {
    if (profile.num_alternatives() < 2) throw ValidationError("decisiveness needs at least two alternatives");
    if (!is_consistent(profile, metric)) throw ValidationError("profile is not consistent with the metric");
    double alpha = 0.0;
    for (std::size_t i = 0; i < profile.num_voters(); ++i) {
        const auto& r = profile.ranking(i);
        const double first = metric.voter_alt(i, r[0]);
        const double second = metric.voter_alt(i, r[1]);
        if (first <= 0.0) continue;
        // Consistency leaves second >= first - tol; treat near-ties as ratio 1.
        alpha = std::max(alpha, second <= first ? 1.0 : first / second);
    }
    return std::min(alpha, 1.0);
}

PreferenceProfile induced_profile(const MetricSpace& metric, const std::optional<std::vector<std::size_t>>& tie_break) {
    const std::size_t m = metric.num_alternatives();
    std::vector<std::size_t> rank_of(m);
    if (tie_break) {
        if (tie_break->size() != m) throw ValidationError("tie-break order must list every alternative");
        std::vector<bool> seen(m, false);
        for (std::size_t k = 0; k < m; ++k) {
            const auto a = (*tie_break)[k];
            if (a >= m || seen[a]) throw ValidationError("tie-break order is not a permutation");
            seen[a] = true;
            rank_of[a] = k;
        }
    } else {
        std::iota(rank_of.begin(), rank_of.end(), 0);
    }
    std::vector<Ranking> rankings;
    for (std::size_t i = 0; i < metric.num_voters(); ++i) {
        Ranking r(m);
        std::iota(r.begin(), r.end(), 0);
        std::sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) {
            const double da = metric.voter_alt(i, a), db = metric.voter_alt(i, b);
            if (da != db) return da < db;
            return rank_of[a] < rank_of[b];
        });
        rankings.push_back(std::move(r));
    }
    return PreferenceProfile(metric.alternatives(), std::move(rankings));
}

double upper_median(std::vector<double> values) {
    if (values.empty()) throw ValidationError("median of an empty set");
    const std::size_t k = values.size() / 2;  // 0-based index of the (floor(n/2)+1)-th smallest
    std::nth_element(values.begin(), values.begin() + static_cast<long>(k), values.end());
    return values[k];
}

double social_cost(const MetricSpace& metric, std::size_t alt, Objective objective) {
    if (alt >= metric.num_alternatives()) throw ValidationError("unknown alternative index");
    std::vector<double> dist(metric.num_voters());
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = metric.voter_alt(i, alt);
    if (objective == Objective::Sum) return std::accumulate(dist.begin(), dist.end(), 0.0);
    return upper_median(std::move(dist));
}

double social_cost(const MetricSpace& metric, const std::string& alt, Objective objective) {
    const auto& alts = metric.alternatives();
    auto it = std::find(alts.begin(), alts.end(), alt);
    if (it == alts.end()) throw ValidationError("unknown alternative '" + alt + "'");
    return social_cost(metric, static_cast<std::size_t>(it - alts.begin()), objective);
}

}  // namespace mdist
