#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mdist/distortion.hpp"
#include "mdist/euclid.hpp"
#include "mdist/tournament.hpp"
#include "support.hpp"

namespace mdist {
namespace {

using testing::cycle3;

OracleOptions with_alpha(double alpha, Setting setting = Setting::General) {
    OracleOptions o;
    o.alpha = alpha;
    o.setting = setting;
    return o;
}

PreferenceProfile random_profile(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    const auto orders = all_rankings(m);
    std::vector<Ranking> rankings;
    for (std::size_t i = 0; i < n; ++i) rankings.push_back(orders[rng() % orders.size()]);
    return PreferenceProfile(default_alternative_names(m), rankings);
}

Lottery random_lottery(const std::vector<std::string>& alts, std::mt19937_64& rng) {
    std::vector<double> w(alts.size());
    for (auto& v : w) v = static_cast<double>(rng() % 4);
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) w[0] = 1.0;
    return Lottery::from_weights(alts, w);
}

// The oracle's witness must be an allowed metric that attains the reported value.
void expect_sound(const DistortionReport& r, const PreferenceProfile& profile, const Lottery& lottery,
                  const OracleOptions& o) {
    if (!r.witness_metric) {
        // only when no allowed metric gives the optimum a positive cost
        EXPECT_EQ(r.value, 1.0) << profile.to_string() << " " << lottery.to_string();
        return;
    }
    const auto& d = *r.witness_metric;
    EXPECT_TRUE(is_consistent(profile, d));
    EXPECT_LE(decisiveness_alpha(profile, d), o.alpha + 1e-6);
    if (o.setting == Setting::Simplex) {
        for (std::size_t y = 0; y < d.num_alternatives(); ++y) {
            for (std::size_t z = 0; z < d.num_alternatives(); ++z)
                if (y != z) EXPECT_NEAR(d.alt_alt(y, z), 1.0, 1e-6);
            for (std::size_t i = 0; i < d.num_voters(); ++i) EXPECT_LE(d.voter_alt(i, y), 1.0 + 1e-6);
        }
    }
    const double replay = distortion_given_metric(lottery, d, r.objective);
    if (r.infinite)
        EXPECT_TRUE(std::isinf(replay));
    else
        EXPECT_NEAR(replay, r.value, 1e-5);
}

TEST(GivenMetricTest, Examples) {
    const auto fig1 = generate_family("figure1", {{"n", 4}, {"eps", 0.0}});
    EXPECT_NEAR(distortion_given_metric(Lottery::uniform(fig1.profile.alternatives()), *fig1.metric, Objective::Sum),
                2.0, 1e-12);
    EXPECT_EQ(distortion_given_metric(Lottery::point_mass(fig1.profile.alternatives(), 0), *fig1.metric,
                                      Objective::Sum),
              1.0);
    const auto zero = MetricSpace::from_positions({"v0", "v1"}, {"A", "B"}, {0.0, 0.0}, {0.0, 1.0});
    EXPECT_TRUE(std::isinf(distortion_given_metric(Lottery::uniform({"A", "B"}), zero, Objective::Sum)));
    EXPECT_EQ(distortion_given_metric(Lottery::point_mass({"A", "B"}, 0), zero, Objective::Sum), 1.0);
}

TEST(GivenMetricTest, ScaleInvariance) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = testing::random_planar_metric(1 + rng() % 6, 2 + rng() % 3, rng);
        const auto l = random_lottery(d.alternatives(), rng);
        const double c = std::ldexp(1.0, static_cast<int>(rng() % 20) - 10) * 1.37;
        for (auto obj : {Objective::Sum, Objective::Median}) {
            const double a = distortion_given_metric(l, d, obj), b = distortion_given_metric(l, d.scaled(c), obj);
            EXPECT_NEAR(a, b, 1e-12 * a);
        }
    }
}

TEST(SumOracleTest, TiedPairAtAlphaOne) {
    const auto p = PreferenceProfile::from_string("X>W;W>X");
    const auto r = sum_distortion_oracle(p, Lottery::uniform(p.alternatives()), with_alpha(1.0));
    EXPECT_NEAR(r.value, 2.0, 1e-7);
    EXPECT_FALSE(r.infinite);
    expect_sound(r, p, Lottery::uniform(p.alternatives()), with_alpha(1.0));
}

TEST(SumOracleTest, PointMassOnOneSideOfTie) {
    const auto inst = generate_family("theorem1", {{"n", 2}, {"alpha", 1.0}});
    const auto l = Lottery::point_mass(inst.profile.alternatives(), inst.profile.index_of("W"));
    EXPECT_NEAR(sum_distortion_oracle(inst.profile, l, with_alpha(1.0)).value, 3.0, 1e-7);
}

TEST(SumOracleTest, FigureThreeRandomizedDictatorship) {
    const auto inst = generate_family("figure3", {{"n", 4}, {"eps", 0.0}});
    const auto l = randomized_dictatorship(inst.profile);
    const auto r = sum_distortion_oracle(inst.profile, l, with_alpha(1.0));
    EXPECT_NEAR(r.value, 2.5, 1e-7);
    expect_sound(r, inst.profile, l, with_alpha(1.0));
}

TEST(SumOracleTest, FloorOnTiedProfile) {
    const auto p = PreferenceProfile::from_string("X>W;W>X");
    for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
        double best = kInfinity;
        for (int k = 0; k <= 20; ++k) {
            const double q = k / 20.0;
            best = std::min(best, sum_distortion_oracle(p, Lottery(p.alternatives(), {1 - q, q}), with_alpha(alpha)).value);
        }
        const double half = sum_distortion_oracle(p, Lottery::uniform(p.alternatives()), with_alpha(alpha)).value;
        EXPECT_NEAR(best, 1 + alpha, 1e-6) << "alpha " << alpha;
        EXPECT_NEAR(half, best, 1e-9) << "alpha " << alpha;
    }
}

TEST(UnboundednessProbeTest, Examples) {
    const auto unanimous = PreferenceProfile::from_string("A>B;A>B;A>B");
    EXPECT_FALSE(sum_unboundedness_probe(unanimous, Lottery::point_mass({"A", "B"}, 0), with_alpha(1.0)));
    EXPECT_TRUE(sum_unboundedness_probe(unanimous, Lottery::point_mass({"A", "B"}, 1), with_alpha(1.0)));
    const auto tied = PreferenceProfile::from_string("X>W;W>X");
    EXPECT_FALSE(sum_unboundedness_probe(tied, Lottery::uniform(tied.alternatives()), with_alpha(1.0)));
    const auto r = sum_distortion_oracle(unanimous, Lottery::point_mass({"A", "B"}, 1), with_alpha(1.0));
    EXPECT_TRUE(r.infinite);
    EXPECT_TRUE(std::isinf(r.value));
    expect_sound(r, unanimous, Lottery::point_mass({"A", "B"}, 1), with_alpha(1.0));
}

TEST(SumOracleTest, FullFormulationAgrees) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = random_profile(1 + rng() % 4, 2 + rng() % 2, rng);
        const auto l = random_lottery(p.alternatives(), rng);
        auto o = with_alpha(static_cast<double>(rng() % 5) / 4.0);
        const auto reduced = sum_distortion_oracle(p, l, o);
        o.full_metric = true;
        const auto full = sum_distortion_oracle(p, l, o);
        ASSERT_EQ(reduced.infinite, full.infinite) << p.to_string();
        if (!reduced.infinite) EXPECT_NEAR(reduced.value, full.value, 1e-6) << p.to_string();
    }
}

TEST(MedianOracleTest, FullFormulationAgrees) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = random_profile(1 + rng() % 4, 2 + rng() % 2, rng);
        const auto l = random_lottery(p.alternatives(), rng);
        auto o = with_alpha(static_cast<double>(rng() % 3) / 2.0);
        const auto reduced = median_distortion_oracle(p, l, o);
        o.full_metric = true;
        const auto full = median_distortion_oracle(p, l, o);
        ASSERT_EQ(reduced.infinite, full.infinite) << p.to_string();
        if (!reduced.infinite) EXPECT_NEAR(reduced.value, full.value, 1e-6) << p.to_string();
    }
}

TEST(OracleTest, WitnessesAreSoundInEverySetting) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 120; ++trial) {
        const auto n = 1 + rng() % 5, m = 2 + rng() % 2;
        const auto obj = trial % 2 ? Objective::Median : Objective::Sum;
        const auto setting = static_cast<Setting>(trial % 3);
        PreferenceProfile p = random_profile(n, m, rng);
        auto o = with_alpha(static_cast<double>(rng() % 5) / 4.0, setting);
        if (setting == Setting::Euclidean1d) {
            const auto inst = generate_family("random_euclidean1d", {{"n", double(n)}, {"m", double(m)}, {"seed", double(trial)}});
            p = inst.profile;
            o.embedding = inst.positions;
            o.alpha = 1.0;
        }
        const auto l = random_lottery(p.alternatives(), rng);
        const auto r = distortion_oracle(p, l, obj, o);
        EXPECT_GE(r.value, 1.0);
        expect_sound(r, p, l, o);
    }
}

TEST(OracleTest, SamplingNeverExceedsOracle) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_profile(1 + rng() % 5, 2 + rng() % 2, rng);
        const auto l = random_lottery(p.alternatives(), rng);
        const auto obj = trial % 2 ? Objective::Median : Objective::Sum;
        const auto o = with_alpha(static_cast<double>(rng() % 5) / 4.0, trial % 3 ? Setting::General : Setting::Simplex);
        const auto exact = distortion_oracle(p, l, obj, o);
        const double sampled = sampling_lower_bound(p, l, obj, o, 200, static_cast<std::uint64_t>(trial));
        EXPECT_GE(sampled, 1.0 - 1e-12);
        EXPECT_LE(sampled, exact.value + 1e-6) << p.to_string() << " " << l.to_string();
    }
}

TEST(SamplingTest, SeedWitnessIsReached) {
    const auto inst = generate_family("theorem1", {{"n", 2}, {"alpha", 1.0}});
    const auto l = Lottery::uniform(inst.profile.alternatives());
    const double v = sampling_lower_bound(inst.profile, l, Objective::Sum, with_alpha(1.0), 10000, 1, {*inst.metric});
    EXPECT_GE(v, 2.0 - 1e-6);
    EXPECT_LE(v, 2.0 + 1e-6);
}

TEST(SamplingTest, UnanimousFavouriteIsExact) {
    const auto p = PreferenceProfile::from_string("A>B>C;A>C>B");
    const auto l = Lottery::point_mass(p.alternatives(), 0);
    const double v = sampling_lower_bound(p, l, Objective::Sum, with_alpha(1.0), 500, 9);
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, 1.0 + 1e-9);
}

TEST(SamplingTest, SeedDeterminesResult) {
    const auto p = cycle3();
    const auto l = randomized_dictatorship(p);
    const auto o = with_alpha(0.5);
    EXPECT_EQ(sampling_lower_bound(p, l, Objective::Sum, o, 300, 4), sampling_lower_bound(p, l, Objective::Sum, o, 300, 4));
    EXPECT_THROW(sampling_lower_bound(p, l, Objective::Sum, o, 0, 4), ValidationError);
}

// Upper bound on the sum distortion in terms of the lottery, evaluated on the witness.
double top_choice_bound(const PreferenceProfile& p, const Lottery& l, const MetricSpace& d, std::size_t x,
                        double alpha) {
    const auto counts = top_counts(p);
    const double n = static_cast<double>(p.num_voters());
    double num = 0.0, den = 0.0;
    for (std::size_t y = 0; y < p.num_alternatives(); ++y) {
        num += l[y] * (n - 2.0 * counts[y] / (1 + alpha)) * d.alt_alt(x, y);
        den += counts[y] * d.alt_alt(x, y);
    }
    return den <= 1e-12 ? kInfinity : 1 + (1 + alpha) * num / den;
}

TEST(SumOracleTest, WithinTopChoiceBound) {
    int checked = 0;
    for (std::size_t m : {2u, 3u})
        for (std::size_t n = 1; n <= (m == 2 ? 5u : 3u); ++n)
            for_each_canonical_profile(default_alternative_names(m), n, [&](const PreferenceProfile& p) {
                for (const auto& l : {randomized_dictatorship(p), proportional_to_squares(p), Lottery::uniform(p.alternatives())})
                    for (double alpha : {0.0, 0.5, 1.0}) {
                        const auto r = sum_distortion_oracle(p, l, with_alpha(alpha));
                        if (r.infinite || !r.witness_metric) continue;
                        const auto x = p.index_of(r.candidate_optimum);
                        const double bound = top_choice_bound(p, l, *r.witness_metric, x, alpha);
                        EXPECT_LE(r.value, bound + 1e-6) << p.to_string() << " " << l.to_string();
                        ++checked;
                    }
            });
    EXPECT_GT(checked, 100);
}

TEST(MedianOracleTest, LowerBoundConstruction) {
    const auto inst = generate_family("theorem7_median", {{"n", 4}, {"eps", 0.0}});
    const auto l = Lottery::point_mass(inst.profile.alternatives(), inst.profile.index_of("W"));
    const auto r = median_distortion_oracle(inst.profile, l, with_alpha(1.0));
    EXPECT_NEAR(r.value, 3.0, 1e-6);
    expect_sound(r, inst.profile, l, with_alpha(1.0));
    EXPECT_NEAR(distortion_given_metric(l, *inst.metric, Objective::Median), 3.0, 1e-12);
}

TEST(MedianOracleTest, MajorityFavouriteMakesOthersUnbounded) {
    // Three of four voters rank W first, so W can have median cost 0.
    const auto p = PreferenceProfile::from_string("W>X;W>X;W>X;X>W");
    for (double q : {0.02, 0.5, 1.0}) {
        const Lottery l(p.alternatives(), {1 - q, q});
        const auto r = median_distortion_oracle(p, l, with_alpha(1.0));
        EXPECT_TRUE(r.infinite) << q;
        expect_sound(r, p, l, with_alpha(1.0));
    }
}

TEST(MedianOracleTest, UnrankedLoserIsUnbounded) {
    // C is nobody's favourite and loses every contest; A is first for 3 > floor(4/2) voters.
    const auto p = PreferenceProfile::from_string("A>B>C;A>B>C;A>C>B;B>A>C");
    const auto r = median_distortion_oracle(p, Lottery(p.alternatives(), {0.5, 0.25, 0.25}), with_alpha(1.0));
    EXPECT_TRUE(r.infinite);
}

TEST(MedianOracleTest, StrictCondorcetWinnerWithinThree) {
    for (std::size_t n = 1; n <= 5; ++n)
        for_each_canonical_profile(default_alternative_names(3), n, [&](const PreferenceProfile& p) {
            const auto w = condorcet_winners(p).strict;
            if (!w) return;
            const auto r = median_distortion_oracle(p, Lottery::point_mass(p.alternatives(), *w), with_alpha(1.0));
            EXPECT_LE(r.value, 3.0 + 1e-6) << p.to_string();
        });
}

TEST(MedianOracleTest, UncoveredMembersWithinFive) {
    for (std::size_t n = 1; n <= 4; ++n)
        for_each_canonical_profile(default_alternative_names(3), n, [&](const PreferenceProfile& p) {
            for (auto w : uncovered_set(majority_graph(p)).members) {
                const auto r = median_distortion_oracle(p, Lottery::point_mass(p.alternatives(), w), with_alpha(1.0));
                EXPECT_LE(r.value, 5.0 + 1e-6) << p.to_string() << " " << p.name(w);
            }
        });
}

TEST(MedianOracleTest, LimitsAreEnforced) {
    std::mt19937_64 rng(1);
    const auto p = random_profile(9, 2, rng);
    EXPECT_THROW(median_distortion_oracle(p, randomized_dictatorship(p), with_alpha(1.0)), ValidationError);
    auto o = with_alpha(1.0);
    o.max_n = 9;
    EXPECT_NO_THROW(median_distortion_oracle(p, randomized_dictatorship(p), o));
}

TEST(OracleTest, EuclideanIsNoWorseThanGeneral) {
    for (int seed = 0; seed < 40; ++seed) {
        const auto inst = generate_family("random_euclidean1d", {{"n", 5}, {"m", 3}, {"seed", double(seed)}});
        const auto l = randomized_dictatorship(inst.profile);
        auto o = with_alpha(1.0, Setting::Euclidean1d);
        o.embedding = inst.positions;
        for (auto obj : {Objective::Sum, Objective::Median}) {
            const auto line = distortion_oracle(inst.profile, l, obj, o);
            const auto general = distortion_oracle(inst.profile, l, obj, with_alpha(1.0));
            EXPECT_LE(line.value, general.value + 1e-6);
            // the generating metric is one of the line metrics
            EXPECT_GE(line.value, distortion_given_metric(l, *inst.effective_metric(), obj) - 1e-6);
        }
    }
}

TEST(OracleTest, OptionValidation) {
    const auto p = cycle3();
    const auto l = randomized_dictatorship(p);
    EXPECT_THROW(sum_distortion_oracle(p, l, with_alpha(1.5)), ValidationError);
    EXPECT_THROW(sum_distortion_oracle(p, l, with_alpha(1.0, Setting::Euclidean1d)), ValidationError);
    EXPECT_THROW(sum_distortion_oracle(p, Lottery::uniform({"A", "B"}), with_alpha(1.0)), ValidationError);
}

TEST(WorstCaseTest, RandomizedDictatorshipOnTwoAlternatives) {
    const auto r = mechanism_worst_case({MechanismId::RandomizedDictatorship}, 4, 2, Objective::Sum, with_alpha(1.0));
    EXPECT_NEAR(r.value, 2.5, 1e-6);
    ASSERT_TRUE(r.witness_profile.has_value());
    EXPECT_NEAR(sum_distortion_oracle(*r.witness_profile, *r.witness_lottery, with_alpha(1.0)).value, r.value, 1e-9);
}

TEST(WorstCaseTest, CopelandOnTwoVoters) {
    const auto r = mechanism_worst_case({MechanismId::Copeland}, 2, 2, Objective::Sum, with_alpha(1.0));
    EXPECT_NEAR(r.value, 3.0, 1e-6);
}

// With odd n the two counts differ, and the top-choice bound gives
// 1 + 2 * p(Y) * (n - |Y*|) / |Y*| = 25/13 for counts 3 and 2 at alpha = 1.
TEST(WorstCaseTest, GptsOnFiveVotersStaysBelowTwo) {
    const auto r = mechanism_worst_case({MechanismId::AlphaGpts, 1.0}, 5, 2, Objective::Sum, with_alpha(1.0));
    EXPECT_NEAR(r.value, 25.0 / 13.0, 1e-6);
    auto o = with_alpha(1.0);
    o.full_metric = true;
    EXPECT_NEAR(sum_distortion_oracle(*r.witness_profile, *r.witness_lottery, o).value, r.value, 1e-6);
}

TEST(WorstCaseTest, Guards) {
    EXPECT_THROW(mechanism_worst_case({MechanismId::Plurality}, 8, 4, Objective::Sum, with_alpha(1.0)), ValidationError);
    auto o = with_alpha(1.0, Setting::Euclidean1d);
    o.embedding = Positions{{0.0}, {0.0, 1.0}};
    EXPECT_THROW(mechanism_worst_case({MechanismId::Plurality}, 1, 2, Objective::Sum, o), ValidationError);
}

}  // namespace
}  // namespace mdist
