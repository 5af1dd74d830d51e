#pragma once
// Shared fixtures for the test suites.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mdist/metric.hpp"
#include "mdist/profile.hpp"

namespace mdist::testing {

inline PreferenceProfile cycle3() { return PreferenceProfile::from_string("A>B>C;B>C>A;C>A>B"); }

/// Euclidean metric on random points in [0,1]^dim: voters first, then alternatives.
inline MetricSpace random_planar_metric(std::size_t n, std::size_t m, std::mt19937_64& rng, int dim = 2) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t P = n + m;
    std::vector<std::vector<double>> x(P, std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& p : x)
        for (auto& c : p) c = unit(rng);
    std::vector<double> d(P * P);
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = 0; b < P; ++b) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += (x[a][k] - x[b][k]) * (x[a][k] - x[b][k]);
            d[a * P + b] = std::sqrt(s);
        }
    return MetricSpace(default_voter_ids(n), default_alternative_names(m), std::move(d));
}

/// Voters clustered around alternatives so that decisiveness is well below 1.
inline MetricSpace random_clustered_metric(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> ax(m), ay(m), px, py;
    for (std::size_t y = 0; y < m; ++y) ax[y] = unit(rng), ay[y] = unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const auto y = static_cast<std::size_t>(rng() % m);
        px.push_back(ax[y] + 0.2 * (unit(rng) - 0.5));
        py.push_back(ay[y] + 0.2 * (unit(rng) - 0.5));
    }
    px.insert(px.end(), ax.begin(), ax.end());
    py.insert(py.end(), ay.begin(), ay.end());
    const std::size_t P = n + m;
    std::vector<double> d(P * P);
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = 0; b < P; ++b) d[a * P + b] = std::hypot(px[a] - px[b], py[a] - py[b]);
    return MetricSpace(default_voter_ids(n), default_alternative_names(m), std::move(d));
}

}  // namespace mdist::testing
