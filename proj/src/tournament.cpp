#include "mdist/tournament.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mdist {

MajorityGraph::MajorityGraph(std::vector<std::string> vertices, std::vector<std::vector<bool>> beats)
    : vertices_(std::move(vertices)), beats_(std::move(beats)) {
    const std::size_t m = vertices_.size();
    if (beats_.size() != m) throw ValidationError("adjacency matrix does not match the vertex count");
    for (std::size_t y = 0; y < m; ++y) {
        if (beats_[y].size() != m) throw ValidationError("adjacency matrix does not match the vertex count");
        if (beats_[y][y]) throw ValidationError("self-loop at " + vertices_[y]);
    }
    for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = y + 1; z < m; ++z)
            if (beats_[y][z] == beats_[z][y])
                throw ValidationError("not a tournament between " + vertices_[y] + " and " + vertices_[z]);
}

std::vector<std::size_t> MajorityGraph::out_neighbors(std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < size(); ++z)
        if (beats_[y][z]) out.push_back(z);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> MajorityGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t y = 0; y < size(); ++y)
        for (std::size_t z = 0; z < size(); ++z)
            if (beats_[y][z]) out.emplace_back(y, z);
    return out;
}

MajorityGraph majority_graph(const PreferenceProfile& profile) {
    const std::size_t m = profile.num_alternatives();
    const auto counts = pairwise_counts(profile);
    std::vector<std::vector<bool>> beats(m, std::vector<bool>(m, false));
    for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = y + 1; z < m; ++z) {
            // ties go to the earlier alternative y
            if (counts[y][z] >= counts[z][y]) beats[y][z] = true;
            else beats[z][y] = true;
        }
    return MajorityGraph(profile.alternatives(), std::move(beats));
}

UncoveredSetResult uncovered_set(const MajorityGraph& graph) {
    const std::size_t m = graph.size();
    UncoveredSetResult result;
    for (std::size_t x = 0; x < m; ++x) {
        std::vector<CoverPath> paths;
        bool covers_all = true;
        for (std::size_t y = 0; y < m && covers_all; ++y) {
            if (y == x) continue;
            if (graph.beats(x, y)) {
                paths.push_back({x, y, std::nullopt});
                continue;
            }
            covers_all = false;
            for (std::size_t z = 0; z < m; ++z)
                if (graph.beats(x, z) && graph.beats(z, y)) {
                    paths.push_back({x, y, z});
                    covers_all = true;
                    break;
                }
        }
        if (covers_all) {
            result.members.push_back(x);
            result.certificate.insert(result.certificate.end(), paths.begin(), paths.end());
        }
    }
    return result;
}

MinCoverResult min_cover_lottery(const MajorityGraph& graph, LpAudit* audit) {
    const auto members = uncovered_set(graph).members;
    const std::size_t s = members.size();
    LinearProgram lp;
    lp.set_sense(Sense::Minimize);
    std::vector<std::size_t> p(s);
    for (std::size_t k = 0; k < s; ++k) p[k] = lp.add_variable("p_" + graph.vertices()[members[k]]);
    const std::size_t pmax = lp.add_variable("p_max", true);
    lp.add_objective(pmax, 1.0);
    for (std::size_t a = 0; a < s; ++a) {
        LinearExpr row;
        for (std::size_t b = 0; b < s; ++b)
            if (graph.beats(members[a], members[b])) row.push_back({p[b], 1.0});
        row.push_back({pmax, -1.0});
        lp.add_constraint(std::move(row), Relation::LessEqual, 0.0);
    }
    LinearExpr total;
    for (auto v : p) total.push_back({v, 1.0});
    const std::size_t norm_row = lp.add_constraint(std::move(total), Relation::Equal, 1.0);

    const auto sol = solve_audited(lp, audit);
    if (!sol.optimal())
        throw std::runtime_error(std::string("min-cover LP ended with status ") + to_string(sol.status));

    std::vector<double> weights(graph.size(), 0.0);
    for (std::size_t k = 0; k < s; ++k) weights[members[k]] = std::max(sol.values[p[k]], 0.0);
    MinCoverResult result{Lottery::from_weights(graph.vertices(), weights), sol.values[pmax],
                          sol.duals[norm_row], {}, members, check_solution(lp, sol)};
    // Duals of the <= rows of a minimisation are non-positive; the covering weights are their negation.
    for (std::size_t a = 0; a < s; ++a) result.b.push_back(-sol.duals[a]);
    return result;
}

std::vector<double> coverage(const MajorityGraph& graph, const Lottery& lottery) {
    if (lottery.alternatives() != graph.vertices())
        throw ValidationError("lottery is not over the graph's vertices");
    std::vector<double> pi(graph.size(), 0.0);
    for (std::size_t y = 0; y < graph.size(); ++y)
        for (std::size_t z = 0; z < graph.size(); ++z)
            if (graph.beats(y, z)) pi[y] += lottery[z];
    return pi;
}

namespace {

using Bits = std::vector<bool>;  // row-major upper-triangle orientation flags

Bits canonical_form(const std::vector<std::vector<bool>>& beats) {
    const std::size_t m = beats.size();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Bits best;
    do {
        Bits code;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) code.push_back(beats[perm[a]][perm[b]]);
        if (best.empty() || code < best) best = std::move(code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<MajorityGraph> enumerate_tournaments(std::size_t m) {
    if (m == 0 || m > 6) throw ValidationError("tournament enumeration supports 1 <= m <= 6");
    const std::size_t pairs = m * (m - 1) / 2;
    std::set<Bits> seen;
    std::vector<MajorityGraph> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << pairs); ++mask) {
        std::vector<std::vector<bool>> beats(m, std::vector<bool>(m, false));
        std::size_t bit = 0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b, ++bit) {
                if ((mask >> bit) & 1U) beats[a][b] = true;
                else beats[b][a] = true;
            }
        if (seen.insert(canonical_form(beats)).second)
            out.emplace_back(default_alternative_names(m), std::move(beats));
    }
    return out;
}

MajorityGraph random_tournament(std::size_t m, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::vector<bool>> beats(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            if (coin(rng)) beats[a][b] = true;
            else beats[b][a] = true;
        }
    return MajorityGraph(default_alternative_names(m), std::move(beats));
}

}  // namespace mdist
