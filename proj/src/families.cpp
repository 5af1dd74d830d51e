#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mdist/instance.hpp"

namespace mdist {

namespace {

double param(const FamilyParams& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw ValidationError("missing parameter '" + key + "'");
    return it->second;
}

double param_or(const FamilyParams& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::size_t count_param(const FamilyParams& params, const std::string& key, std::size_t min_value) {
    const double v = param(params, key);
    if (v != std::floor(v) || v < static_cast<double>(min_value))
        throw ValidationError("parameter '" + key + "' must be an integer >= " + std::to_string(min_value));
    return static_cast<std::size_t>(v);
}

// Rankings are given explicitly so that tied voters (eps = 0) get the intended order.
Instance line_instance(std::vector<std::string> alts, const std::vector<double>& alt_pos,
                       const std::vector<double>& voter_pos, const std::vector<Ranking>& rankings,
                       std::optional<double> alpha) {
    const std::size_t n = voter_pos.size();
    auto metric = MetricSpace::from_positions(default_voter_ids(n), alts, voter_pos, alt_pos);
    PreferenceProfile profile(alts, rankings);
    Instance inst{profile, metric, alpha, Setting::Euclidean1d, Positions{voter_pos, alt_pos}};
    validate_instance(inst);
    return inst;
}

Instance figure1(const FamilyParams& p) {
    const auto n = count_param(p, "n", 2);
    const double eps = param_or(p, "eps", 0.0);
    if (n % 2) throw ValidationError("figure1 requires even n");
    if (eps < 0 || eps > 1) throw ValidationError("figure1 requires 0 <= eps <= 1");
    std::vector<double> voters;
    std::vector<Ranking> rankings;
    for (std::size_t i = 0; i < n / 2; ++i) voters.push_back(0.0), rankings.push_back({0, 1});
    for (std::size_t i = 0; i < n / 2; ++i) voters.push_back(1.0 + eps), rankings.push_back({1, 0});
    return line_instance({"X", "Y"}, {0.0, 2.0}, voters, rankings, std::nullopt);
}

Instance figure2(const FamilyParams& p) {
    const auto n = count_param(p, "n", 1);
    const double eps = param_or(p, "eps", 0.0);
    if (n % 2 == 0) throw ValidationError("figure2 requires odd n");
    if (eps < 0 || eps > 1) throw ValidationError("figure2 requires 0 <= eps <= 1");
    std::vector<double> voters;
    std::vector<Ranking> rankings;
    for (std::size_t i = 0; i < n / 2; ++i) voters.push_back(0.0), rankings.push_back({0, 1});
    voters.push_back(1.0 + eps), rankings.push_back({1, 0});
    for (std::size_t i = 0; i < n / 2; ++i) voters.push_back(4.0), rankings.push_back({1, 0});
    return line_instance({"X", "Y"}, {0.0, 2.0}, voters, rankings, std::nullopt);
}

Instance figure3(const FamilyParams& p) {
    const auto n = count_param(p, "n", 2);
    const double eps = param_or(p, "eps", 0.0);
    if (eps < 0 || eps > 0.5) throw ValidationError("figure3 requires 0 <= eps <= 1/2");
    std::vector<double> voters(n - 1, 0.0);
    std::vector<Ranking> rankings(n - 1, Ranking{0, 1});
    voters.push_back(0.5 + eps), rankings.push_back({1, 0});
    return line_instance({"X", "W"}, {0.0, 1.0}, voters, rankings, std::nullopt);
}

Instance theorem1(const FamilyParams& p) {
    const auto n = count_param(p, "n", 2);
    const double alpha = param(p, "alpha");
    if (n % 2) throw ValidationError("theorem1 requires even n");
    if (alpha < 0 || alpha > 1) throw ValidationError("alpha must lie in [0,1]");
    // W at 1, X at 0; X-voters sit on X, W-voters at alpha/(1+alpha) from W.
    std::vector<double> voters;
    std::vector<Ranking> rankings;
    for (std::size_t i = 0; i < n / 2; ++i) voters.push_back(0.0), rankings.push_back({1, 0});
    for (std::size_t i = 0; i < n / 2; ++i) voters.push_back(1.0 / (1.0 + alpha)), rankings.push_back({0, 1});
    return line_instance({"W", "X"}, {1.0, 0.0}, voters, rankings, alpha);
}

Instance theorem7_median(const FamilyParams& p) {
    const auto n = count_param(p, "n", 2);
    const double eps = param_or(p, "eps", 0.0);
    if (n % 2) throw ValidationError("theorem7_median requires even n");
    if (eps < 0 || eps >= 0.5) throw ValidationError("theorem7_median requires 0 <= eps < 1/2");
    // W at 0, X at 1.
    std::vector<double> voters;
    std::vector<Ranking> rankings;
    for (std::size_t i = 0; i < n / 2; ++i) voters.push_back(0.5 - eps), rankings.push_back({0, 1});
    voters.push_back(1.5), rankings.push_back({1, 0});
    for (std::size_t i = 0; i + 1 < n / 2; ++i) voters.push_back(-3.0), rankings.push_back({0, 1});
    return line_instance({"W", "X"}, {0.0, 1.0}, voters, rankings, std::nullopt);
}

std::mt19937_64 make_rng(const FamilyParams& p) {
    return std::mt19937_64(static_cast<std::uint64_t>(param_or(p, "seed", 0.0)));
}

Instance random_metric(const FamilyParams& p) {
    const auto n = count_param(p, "n", 1);
    const auto m = count_param(p, "m", 1);
    const double target_alpha = param_or(p, "alpha", 1.0);
    if (target_alpha < 0 || target_alpha > 1) throw ValidationError("alpha must lie in [0,1]");
    auto rng = make_rng(p);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto alts = default_alternative_names(m);
    const std::size_t P = n + m;
    std::vector<double> d(P * P, 0.0);

    if (target_alpha < 1.0) {
        // Planar points: each voter sits within alpha*delta/(1+alpha) of its chosen alternative.
        std::vector<double> ax(m), ay(m), vx(n), vy(n);
        for (std::size_t y = 0; y < m; ++y) ax[y] = unit(rng), ay[y] = unit(rng);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t y = static_cast<std::size_t>(unit(rng) * static_cast<double>(m)) % m;
            double delta = 2.0;
            for (std::size_t z = 0; z < m; ++z)
                if (z != y) delta = std::min(delta, std::hypot(ax[y] - ax[z], ay[y] - ay[z]));
            const double r = unit(rng) * target_alpha * delta / (1.0 + target_alpha);
            const double theta = unit(rng) * 2.0 * M_PI;
            vx[i] = ax[y] + r * std::cos(theta);
            vy[i] = ay[y] + r * std::sin(theta);
        }
        auto px = vx, py = vy;
        px.insert(px.end(), ax.begin(), ax.end());
        py.insert(py.end(), ay.begin(), ay.end());
        for (std::size_t a = 0; a < P; ++a)
            for (std::size_t b = 0; b < P; ++b) d[a * P + b] = std::hypot(px[a] - px[b], py[a] - py[b]);
    } else {
        // Shortest paths over random edge weights: a generic (non-Euclidean) metric.
        std::uniform_real_distribution<double> weight(0.05, 1.0);
        for (std::size_t a = 0; a < P; ++a)
            for (std::size_t b = a + 1; b < P; ++b) d[a * P + b] = d[b * P + a] = weight(rng);
        for (std::size_t k = 0; k < P; ++k)
            for (std::size_t a = 0; a < P; ++a)
                for (std::size_t b = 0; b < P; ++b)
                    d[a * P + b] = std::min(d[a * P + b], d[a * P + k] + d[k * P + b]);
    }
    MetricSpace metric(default_voter_ids(n), alts, std::move(d));
    auto profile = induced_profile(metric);
    std::optional<double> alpha;
    if (m >= 2) alpha = decisiveness_alpha(profile, metric);
    Instance inst{profile, metric, alpha, Setting::General, std::nullopt};
    validate_instance(inst);
    return inst;
}

Instance random_simplex(const FamilyParams& p) {
    const auto n = count_param(p, "n", 1);
    const auto m = count_param(p, "m", 2);
    const double alpha = param(p, "alpha");
    if (alpha < 0 || alpha > 1) throw ValidationError("alpha must lie in [0,1]");
    auto rng = make_rng(p);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> va(n, std::vector<double>(m));
    std::vector<std::vector<double>> aa(m, std::vector<double>(m, 1.0));
    for (std::size_t y = 0; y < m; ++y) aa[y][y] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t top = static_cast<std::size_t>(unit(rng) * static_cast<double>(m)) % m;
        // top distance a <= alpha; every other distance in [max(a, 1-a, a/alpha), 1]
        const double a = alpha * unit(rng);
        double lo = std::max(a, 1.0 - a);
        if (alpha > 0) lo = std::max(lo, a / alpha);
        lo = std::min(lo, 1.0);
        for (std::size_t y = 0; y < m; ++y) va[i][y] = (y == top) ? a : lo + (1.0 - lo) * unit(rng);
    }
    auto metric = MetricSpace::from_bipartite(default_voter_ids(n), default_alternative_names(m), va, aa);
    auto profile = induced_profile(metric);
    Instance inst{profile, metric, alpha, Setting::Simplex, std::nullopt};
    validate_instance(inst);
    return inst;
}

Instance random_euclidean1d(const FamilyParams& p) {
    const auto n = count_param(p, "n", 1);
    const auto m = count_param(p, "m", 1);
    auto rng = make_rng(p);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> voters(n), alts(m);
    for (auto& q : alts) q = unit(rng);
    for (auto& x : voters) x = unit(rng);
    auto metric = MetricSpace::from_positions(default_voter_ids(n), default_alternative_names(m), voters, alts);
    auto profile = induced_profile(metric);
    std::optional<double> alpha;
    if (m >= 2) alpha = decisiveness_alpha(profile, metric);
    Instance inst{profile, metric, alpha, Setting::Euclidean1d, Positions{voters, alts}};
    validate_instance(inst);
    return inst;
}

}  // namespace

std::vector<std::string> family_names() {
    return {"figure1", "figure2", "figure3", "theorem1", "theorem7_median",
            "random_metric", "random_simplex", "random_euclidean1d"};
}

Instance generate_family(const std::string& name, const FamilyParams& params) {
    if (name == "figure1") return figure1(params);
    if (name == "figure2") return figure2(params);
    if (name == "figure3") return figure3(params);
    if (name == "theorem1") return theorem1(params);
    if (name == "theorem7_median") return theorem7_median(params);
    if (name == "random_metric") return random_metric(params);
    if (name == "random_simplex") return random_simplex(params);
    if (name == "random_euclidean1d") return random_euclidean1d(params);
    throw ValidationError("unknown family '" + name + "'");
}

}  // namespace mdist
