#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mdist/lottery.hpp"
#include "mdist/lp.hpp"
#include "mdist/profile.hpp"

namespace mdist {

/// Tournament over named vertices: exactly one directed edge per unordered pair.
class MajorityGraph {
public:
    /// beats[y][z] is true iff y -> z. Throws ValidationError unless a tournament.
    MajorityGraph(std::vector<std::string> vertices, std::vector<std::vector<bool>> beats);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    bool beats(std::size_t y, std::size_t z) const { return beats_[y][z]; }
    std::vector<std::size_t> out_neighbors(std::size_t y) const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

private:
    std::vector<std::string> vertices_;
    std::vector<std::vector<bool>> beats_;
};

/// Edge y -> z iff |yz| > n/2, or |yz| = n/2 and y precedes z.
MajorityGraph majority_graph(const PreferenceProfile& profile);

struct CoverPath {
    std::size_t from;
    std::size_t to;
    std::optional<std::size_t> via;  // empty for a direct edge
};

struct UncoveredSetResult {
    std::vector<std::size_t> members;  // ascending
    std::vector<CoverPath> certificate;  // one path per (member, other vertex)
};

UncoveredSetResult uncovered_set(const MajorityGraph& graph);

struct MinCoverResult {
    Lottery lottery;                    // over all vertices, supported on the uncovered set
    double p_max = 0.0;
    double b_min = 0.0;                 // dual of the normalisation row
    std::vector<double> b;              // dual weight per uncovered-set member
    std::vector<std::size_t> members;
    ViolationReport certificate;        // check_solution on the LP
};

/// Minimises the largest probability mass covered by any uncovered-set member.
/// Throws std::runtime_error if the LP does not solve to optimality.
MinCoverResult min_cover_lottery(const MajorityGraph& graph, LpAudit* audit = nullptr);

/// pi(Y) = sum of p(Z) over out-neighbours Z of Y in the full graph.
std::vector<double> coverage(const MajorityGraph& graph, const Lottery& lottery);

/// All tournaments on m labelled vertices up to isomorphism (1, 1, 2, 4, 12 for m = 1..5).
std::vector<MajorityGraph> enumerate_tournaments(std::size_t m);

MajorityGraph random_tournament(std::size_t m, std::mt19937_64& rng);

}  // namespace mdist
