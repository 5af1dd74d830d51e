#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "mdist/tournament.hpp"
#include "support.hpp"

namespace mdist {
namespace {

using testing::cycle3;

MajorityGraph from_edges(const std::vector<std::string>& names, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<bool>> beats(names.size(), std::vector<bool>(names.size(), false));
    for (auto [a, b] : edges) beats[a][b] = true;
    return MajorityGraph(names, beats);
}

MajorityGraph regular5() {
    std::vector<std::pair<int, int>> edges;
    for (int y = 0; y < 5; ++y) edges.push_back({y, (y + 1) % 5}), edges.push_back({y, (y + 2) % 5});
    return from_edges({"A", "B", "C", "D", "E"}, edges);
}

// Brute-force two-hop reachability, independent of uncovered_set.
std::vector<std::size_t> two_hop_members(const MajorityGraph& g) {
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < g.size(); ++y) {
        bool all = true;
        for (std::size_t z = 0; z < g.size() && all; ++z) {
            if (z == y || g.beats(y, z)) continue;
            bool via = false;
            for (std::size_t w = 0; w < g.size(); ++w) via |= g.beats(y, w) && g.beats(w, z);
            all = via;
        }
        if (all) out.push_back(y);
    }
    return out;
}

TEST(MajorityGraphTest, CycleEdges) {
    const auto g = majority_graph(cycle3());
    EXPECT_TRUE(g.beats(0, 1));
    EXPECT_TRUE(g.beats(1, 2));
    EXPECT_TRUE(g.beats(2, 0));
    EXPECT_EQ(g.edges().size(), 3u);
}

TEST(MajorityGraphTest, CondorcetWinnerBeatsEveryone) {
    const auto g = majority_graph(PreferenceProfile::from_string("B>A>C;B>C>A;A>B>C"));
    EXPECT_EQ(g.out_neighbors(1), (std::vector<std::size_t>{0, 2}));
}

TEST(MajorityGraphTest, TieGoesToEarlierAlternative) {
    const auto g = majority_graph(PreferenceProfile::from_string("A>B;B>A"));
    EXPECT_TRUE(g.beats(0, 1));
    EXPECT_FALSE(g.beats(1, 0));
}

TEST(MajorityGraphTest, RejectsNonTournaments) {
    EXPECT_THROW(MajorityGraph({"A", "B"}, {{false, false}, {false, false}}), ValidationError);
    EXPECT_THROW(MajorityGraph({"A", "B"}, {{false, true}, {true, false}}), ValidationError);
    EXPECT_THROW(MajorityGraph({"A"}, {{true}}), ValidationError);
}

TEST(UncoveredSetTest, Examples) {
    EXPECT_EQ(uncovered_set(majority_graph(cycle3())).members, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(uncovered_set(majority_graph(PreferenceProfile::from_string("B>A>C;B>C>A;A>B>C"))).members,
              (std::vector<std::size_t>{1}));
    // A->B, A->C, D->A, B->C, B->D, C->D
    const auto g = from_edges({"A", "B", "C", "D"}, {{0, 1}, {0, 2}, {3, 0}, {1, 2}, {1, 3}, {2, 3}});
    EXPECT_EQ(uncovered_set(g).members, (std::vector<std::size_t>{0, 1, 3}));
}

TEST(UncoveredSetTest, CertificatePathsAreValid) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = random_tournament(2 + rng() % 9, rng);
        const auto result = uncovered_set(g);
        EXPECT_EQ(result.members, two_hop_members(g));
        EXPECT_EQ(result.certificate.size(), result.members.size() * (g.size() - 1));
        for (const auto& p : result.certificate) {
            if (p.via)
                EXPECT_TRUE(g.beats(p.from, *p.via) && g.beats(*p.via, p.to));
            else
                EXPECT_TRUE(g.beats(p.from, p.to));
        }
    }
}

TEST(MinCoverTest, Examples) {
    const auto cyc = min_cover_lottery(majority_graph(cycle3()));
    EXPECT_NEAR(cyc.p_max, 1.0 / 3, 1e-12);
    const auto winner = min_cover_lottery(majority_graph(PreferenceProfile::from_string("B>A>C;B>C>A;A>B>C")));
    EXPECT_EQ(winner.lottery.probabilities(), (std::vector<double>{0, 1, 0}));
    EXPECT_NEAR(winner.p_max, 0.0, 1e-12);
    const auto reg = min_cover_lottery(regular5());
    EXPECT_NEAR(reg.p_max, 0.4, 1e-9);
    for (std::size_t y = 0; y < 5; ++y) EXPECT_NEAR(reg.lottery[y], 0.2, 1e-9);
}

TEST(CoverageTest, Examples) {
    const auto g = majority_graph(cycle3());
    for (double pi : coverage(g, Lottery::uniform(g.vertices()))) EXPECT_NEAR(pi, 1.0 / 3, 1e-15);
    const auto w = majority_graph(PreferenceProfile::from_string("B>A>C;B>C>A;A>B>C"));
    for (double pi : coverage(w, Lottery::point_mass(w.vertices(), 1))) EXPECT_EQ(pi, 0.0);
}

TEST(EnumerateTournamentsTest, IsomorphismClassCounts) {
    const std::vector<std::size_t> expected{1, 1, 2, 4, 12, 56};
    for (std::size_t m = 1; m <= 6; ++m) EXPECT_EQ(enumerate_tournaments(m).size(), expected[m - 1]) << "m=" << m;
}

void check_min_cover(const MajorityGraph& g) {
    const auto r = min_cover_lottery(g);
    ASSERT_FALSE(r.members.empty());
    EXPECT_TRUE(r.certificate.certified()) << r.certificate.summary();
    EXPECT_LE(r.p_max, 0.5 + 1e-8);
    EXPECT_LE(r.b_min, 0.5 + 1e-8);
    EXPECT_NEAR(r.p_max, r.b_min, 1e-8);
    const auto pi = coverage(g, r.lottery);
    EXPECT_LE(*std::max_element(pi.begin(), pi.end()), 0.5 + 1e-8);
    for (std::size_t y = 0; y < g.size(); ++y)
        if (r.lottery[y] > 0) EXPECT_TRUE(std::binary_search(r.members.begin(), r.members.end(), y));
}

TEST(MinCoverTest, GuaranteesOnAllSmallTournaments) {
    for (std::size_t m = 1; m <= 6; ++m)
        for (const auto& g : enumerate_tournaments(m)) check_min_cover(g);
}

TEST(MinCoverTest, GuaranteesOnRandomTournaments) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) check_min_cover(random_tournament(2 + rng() % 11, rng));
}

}  // namespace
}  // namespace mdist
