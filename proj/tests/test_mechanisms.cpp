#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "mdist/mechanisms.hpp"
#include "mdist/tournament.hpp"
#include "support.hpp"

namespace mdist {
namespace {

using testing::cycle3;

void expect_lottery(const Lottery& l, const std::vector<double>& p, double tol = 1e-15) {
    ASSERT_EQ(l.size(), p.size());
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(l[k], p[k], tol) << "entry " << k;
}

PreferenceProfile random_profile(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    const auto orders = all_rankings(m);
    std::vector<Ranking> rankings;
    for (std::size_t i = 0; i < n; ++i) rankings.push_back(orders[rng() % orders.size()]);
    return PreferenceProfile(default_alternative_names(m), rankings);
}

TEST(RandomizedDictatorshipTest, Examples) {
    expect_lottery(randomized_dictatorship(PreferenceProfile::from_string("A>B;A>B;B>A")), {2.0 / 3, 1.0 / 3});
    expect_lottery(randomized_dictatorship(PreferenceProfile::from_string("A>B>C;A>C>B")), {1, 0, 0});
    expect_lottery(randomized_dictatorship(cycle3()), {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

TEST(PluralityTest, Examples) {
    expect_lottery(plurality(PreferenceProfile::from_string("A>B;A>B;A>B;B>A;B>A")), {1, 0});
    expect_lottery(plurality(PreferenceProfile::from_string("A>B;A>B;B>A;B>A")), {1, 0});
    expect_lottery(plurality(cycle3()), {1, 0, 0});
}

TEST(ProportionalToSquaresTest, Examples) {
    expect_lottery(proportional_to_squares(PreferenceProfile::from_string("A>B;A>B;B>A")), {0.8, 0.2});
    expect_lottery(proportional_to_squares(cycle3()), {1.0 / 3, 1.0 / 3, 1.0 / 3});
    expect_lottery(proportional_to_squares(PreferenceProfile::from_string("B>A;B>A")), {0, 1});
}

TEST(AlphaGptsTest, Examples) {
    for (double a : {0.0, 0.3, 1.0}) expect_lottery(alpha_gpts(2, 2, a), {0.5, 0.5});
    expect_lottery(alpha_gpts(3, 1, 1.0), {0.9, 0.1});
    expect_lottery(alpha_gpts(2, 3, 0.0), {0, 1});
    EXPECT_EQ(alpha_gpts(4, 1, 0.5, "P", "Q").alternatives(), (std::vector<std::string>{"P", "Q"}));
}

TEST(AlphaGptsTest, EqualCountsAreFair) {
    for (int k = 1; k <= 20; ++k)
        for (double a = 0.0; a <= 1.0; a += 0.05) expect_lottery(alpha_gpts(k, k, a), {0.5, 0.5});
}

TEST(AlphaGptsTest, AlphaOneIsProportionalToSquares) {
    for (int x = 0; x <= 12; ++x)
        for (int y = 0; y <= 12; ++y) {
            if (x + y == 0) continue;
            const double sx = x * x, sy = y * y;
            expect_lottery(alpha_gpts(x, y, 1.0), {sx / (sx + sy), sy / (sx + sy)}, 1e-15);
        }
}

TEST(AlphaGptsTest, ClampedRegimeIsPointMassOnMajority) {
    // (1 + alpha) * 2 < (1 - alpha) * 5 for alpha < 3/7
    expect_lottery(alpha_gpts(2, 5, 0.2), {0, 1});
    expect_lottery(alpha_gpts(5, 2, 0.2), {1, 0});
    const auto l = alpha_gpts(3, 4, 0.5);
    EXPECT_GT(l[0], 0.0);
    EXPECT_LT(l[0], 0.5);
}

TEST(CopelandTest, Examples) {
    expect_lottery(copeland(PreferenceProfile::from_string("B>A>C;B>C>A;A>B>C")), {0, 1, 0});
    expect_lottery(copeland(cycle3()), {1, 0, 0});
    expect_lottery(copeland(PreferenceProfile::from_string("A")), {1});
    EXPECT_EQ(copeland_scores(PreferenceProfile::from_string("A>B;B>A")), (std::vector<double>{0.5, 0.5}));
}

TEST(CondorcetTest, Examples) {
    const auto cyc = condorcet_winners(cycle3());
    EXPECT_FALSE(cyc.strict.has_value());
    EXPECT_TRUE(cyc.weak.empty());
    const auto split = condorcet_winners(PreferenceProfile::from_string("X>W;W>X"));
    EXPECT_FALSE(split.strict.has_value());
    EXPECT_EQ(split.weak, (std::vector<std::size_t>{0, 1}));
    const auto strict = condorcet_winners(PreferenceProfile::from_string("B>A>C;B>C>A;A>B>C"));
    EXPECT_EQ(strict.strict, std::optional<std::size_t>{1});
    EXPECT_EQ(strict.weak, (std::vector<std::size_t>{1}));
}

TEST(MajorityWinnerTest, Examples) {
    EXPECT_EQ(majority_winner(PreferenceProfile::from_string("A>B;A>B;A>B;B>A;B>A")), std::optional<std::size_t>{0});
    EXPECT_FALSE(majority_winner(PreferenceProfile::from_string("A>B;A>B;B>A;B>A")).has_value());
    EXPECT_FALSE(majority_winner(cycle3()).has_value());
}

TEST(ApplyMechanismTest, FallbacksAndDispatch) {
    // majority falls back to plurality; condorcet falls back to copeland
    expect_lottery(apply_mechanism({MechanismId::Majority}, cycle3()), {1, 0, 0});
    expect_lottery(apply_mechanism({MechanismId::Condorcet}, cycle3()), {1, 0, 0});
    expect_lottery(apply_mechanism({MechanismId::Condorcet}, PreferenceProfile::from_string("X>W;W>X")), {1, 0});
    expect_lottery(apply_mechanism({MechanismId::AlphaGpts, 1.0}, PreferenceProfile::from_string("A>B;A>B;A>B;B>A")),
                   {0.9, 0.1});
    EXPECT_THROW(apply_mechanism({MechanismId::AlphaGpts}, cycle3()), ValidationError);
    EXPECT_THROW(apply_mechanism({MechanismId::Algorithm1}, cycle3()), ValidationError);
    for (const char* name : {"rd", "plurality", "pts", "gpts", "copeland", "condorcet", "majority", "mincover",
                             "algorithm1"})
        EXPECT_STREQ(to_string(parse_mechanism(name)), name);
    EXPECT_EQ(parse_mechanism("randomized_dictatorship"), MechanismId::RandomizedDictatorship);
    EXPECT_THROW(parse_mechanism("borda"), ValidationError);
}

TEST(ApplyMechanismTest, AnonymityUnderVoterPermutation) {
    std::mt19937_64 rng(31);
    const std::vector<MechanismId> ids{MechanismId::RandomizedDictatorship, MechanismId::Plurality,
                                       MechanismId::ProportionalToSquares, MechanismId::Copeland,
                                       MechanismId::Condorcet, MechanismId::Majority, MechanismId::MinCover};
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 1 + rng() % 7, m = 2 + rng() % 3;
        const auto profile = random_profile(n, m, rng);
        auto rankings = profile.rankings();
        std::shuffle(rankings.begin(), rankings.end(), rng);
        const PreferenceProfile shuffled(profile.alternatives(), rankings);
        for (auto id : ids)
            EXPECT_EQ(apply_mechanism({id}, profile).probabilities(), apply_mechanism({id}, shuffled).probabilities())
                << to_string(id) << " on " << profile.to_string();
    }
}

TEST(ApplyMechanismTest, NeutralityUnderRelabelling) {
    // Renaming alternatives while keeping their order relabels every output.
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = 1 + rng() % 6, m = 2 + rng() % 3;
        const auto profile = random_profile(n, m, rng);
        std::vector<std::string> renamed;
        for (std::size_t y = 0; y < m; ++y) renamed.push_back("z" + std::to_string(y));
        const PreferenceProfile relabelled(renamed, profile.rankings());
        for (auto id : {MechanismId::RandomizedDictatorship, MechanismId::ProportionalToSquares, MechanismId::Copeland,
                        MechanismId::MinCover}) {
            const auto a = apply_mechanism({id}, profile), b = apply_mechanism({id}, relabelled);
            EXPECT_EQ(a.probabilities(), b.probabilities());
            EXPECT_EQ(b.alternatives(), renamed);
        }
    }
}

// With an odd number of voters there are no pairwise ties, so Copeland scores are
// out-degrees in the majority graph.
TEST(CopelandTest, WinnerIsUncoveredWithoutTies) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 500; ++trial) {
        const auto profile = random_profile(1 + 2 * (rng() % 5), 2 + rng() % 4, rng);
        const auto winner = copeland(profile).support().front();
        const auto members = uncovered_set(majority_graph(profile)).members;
        EXPECT_NE(std::find(members.begin(), members.end(), winner), members.end()) << profile.to_string();
    }
}

// Half-point ties can crown an alternative that the tie-broken graph covers:
// A ties B and C, so A beats both after tie-breaking, while B scores 1.5.
TEST(CopelandTest, HalfPointTiesCanPickCoveredAlternative) {
    const auto profile = PreferenceProfile::from_string("A>B>C;B>C>A");
    EXPECT_EQ(copeland_scores(profile), (std::vector<double>{1.0, 1.5, 0.5}));
    EXPECT_EQ(copeland(profile).support().front(), 1u);
    EXPECT_EQ(uncovered_set(majority_graph(profile)).members, (std::vector<std::size_t>{0}));
}

}  // namespace
}  // namespace mdist
