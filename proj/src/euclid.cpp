#include "mdist/euclid.hpp"

#include <algorithm>
#include <numeric>

#include "mdist/mechanisms.hpp"

namespace mdist {

MetricSpace LineEmbedding::metric(const PreferenceProfile& profile) const {
    return MetricSpace::from_positions(default_voter_ids(profile.num_voters()), profile.alternatives(),
                                       voter_positions, alternative_positions);
}

std::vector<std::size_t> LineEmbedding::voter_order() const {
    std::vector<std::size_t> order(voter_positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return voter_positions[a] < voter_positions[b]; });
    return order;
}

namespace {

// Every prefix of a 1-Euclidean ranking is an interval of the axis.
bool single_peaked(const PreferenceProfile& profile, const std::vector<std::size_t>& slot) {
    const std::size_t m = profile.num_alternatives();
    for (const auto& r : profile.rankings()) {
        std::size_t lo = slot[r[0]], hi = slot[r[0]];
        for (std::size_t k = 1; k < m; ++k) {
            const std::size_t s = slot[r[k]];
            if (s + 1 == lo) lo = s;
            else if (s == hi + 1) hi = s;
            else return false;
        }
    }
    return true;
}

std::optional<LineEmbedding> embed_on_axis(const PreferenceProfile& profile, const std::vector<std::size_t>& axis,
                                           LpAudit* audit) {
    const std::size_t n = profile.num_voters(), m = profile.num_alternatives();
    constexpr double margin = 1.0;
    LinearProgram lp;
    std::vector<std::size_t> q(m), x(n);
    for (std::size_t a = 0; a < m; ++a) q[a] = lp.add_variable("q_" + profile.name(a), true);
    for (std::size_t i = 0; i < n; ++i) x[i] = lp.add_variable("x_" + std::to_string(i), true);
    lp.add_constraint({{q[axis[0]], 1.0}}, Relation::Equal, 0.0);
    for (std::size_t k = 0; k + 1 < m; ++k)
        lp.add_constraint({{q[axis[k + 1]], 1.0}, {q[axis[k]], -1.0}}, Relation::GreaterEqual, margin);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = k + 1; l < m; ++l) {
                const std::size_t a = axis[k], b = axis[l];  // a left of b
                LinearExpr row{{x[i], 2.0}, {q[a], -1.0}, {q[b], -1.0}};
                if (profile.prefers(i, a, b)) lp.add_constraint(std::move(row), Relation::LessEqual, -margin);
                else lp.add_constraint(std::move(row), Relation::GreaterEqual, margin);
            }
    const auto sol = solve_audited(lp, audit);
    if (!sol.optimal()) return std::nullopt;
    LineEmbedding e;
    e.axis = axis;
    e.margin = margin;
    for (std::size_t a = 0; a < m; ++a) e.alternative_positions.push_back(sol.values[q[a]]);
    for (std::size_t i = 0; i < n; ++i) e.voter_positions.push_back(sol.values[x[i]]);
    return e;
}

}  // namespace

std::optional<LineEmbedding> recognize_1d(const PreferenceProfile& profile, LpAudit* audit) {
    const std::size_t m = profile.num_alternatives();
    if (m > kMaxRecognitionAlternatives)
        throw ValidationError("recognition supports at most " + std::to_string(kMaxRecognitionAlternatives) +
                              " alternatives");
    std::vector<std::size_t> axis(m);
    std::iota(axis.begin(), axis.end(), 0);
    std::vector<std::size_t> slot(m);
    do {
        std::vector<std::size_t> reversed(axis.rbegin(), axis.rend());
        if (reversed < axis) continue;
        for (std::size_t k = 0; k < m; ++k) slot[axis[k]] = k;
        if (!single_peaked(profile, slot)) continue;
        if (auto e = embed_on_axis(profile, axis, audit)) return e;
    } while (std::next_permutation(axis.begin(), axis.end()));
    return std::nullopt;
}

Lottery algorithm1(const PreferenceProfile& profile, double alpha, const LineEmbedding& embedding) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0,1]");
    const std::size_t n = profile.num_voters(), m = profile.num_alternatives();
    const auto order = embedding.voter_order();
    const std::size_t median_voter = order[n / 2];
    const std::size_t x = profile.top(median_voter);
    const auto& axis = embedding.axis;
    const std::size_t slot = static_cast<std::size_t>(std::find(axis.begin(), axis.end(), x) - axis.begin());
    const std::optional<std::size_t> left = slot > 0 ? std::optional(axis[slot - 1]) : std::nullopt;
    const std::optional<std::size_t> right = slot + 1 < m ? std::optional(axis[slot + 1]) : std::nullopt;

    const auto counts = pairwise_counts(profile);
    const int yx = left ? counts[*left][x] : 0;
    const int zx = right ? counts[*right][x] : 0;

    std::vector<double> p(m, 0.0);
    auto mix = [&](std::size_t other) {
        const auto pair = alpha_gpts(counts[x][other], counts[other][x], alpha);
        p[x] = pair[0];
        p[other] = pair[1];
    };
    if (yx < zx) mix(*right);
    else if (yx > zx) mix(*left);
    else p[x] = 1.0;
    return Lottery(profile.alternatives(), std::move(p));
}

Lottery algorithm1(const PreferenceProfile& profile, double alpha) {
    const auto embedding = recognize_1d(profile);
    if (!embedding) throw ValidationError("profile is not 1-Euclidean");
    return algorithm1(profile, alpha, *embedding);
}

}  // namespace mdist
