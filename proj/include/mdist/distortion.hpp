#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mdist/instance.hpp"
#include "mdist/lottery.hpp"
#include "mdist/lp.hpp"
#include "mdist/mechanisms.hpp"
#include "mdist/metric.hpp"
#include "mdist/profile.hpp"

namespace mdist {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Which metrics the adversary may choose.
///
/// Setting::Euclidean1d requires `embedding`: the adversary keeps the order of
/// the given points on the line and chooses the gaps between them.
struct OracleOptions {
    double alpha = 1.0;
    Setting setting = Setting::General;
    double tolerance = 1e-7;
    std::size_t max_n = 8;
    std::size_t max_m = 4;
    std::optional<Positions> embedding;
    /// Use one variable per point pair instead of the voter-alternative form.
    bool full_metric = false;
    LpAudit* audit = nullptr;

    void validate() const;
};

struct DistortionReport {
    double value = 1.0;      // kInfinity when infinite
    bool infinite = false;
    std::optional<MetricSpace> witness_metric;
    std::optional<PreferenceProfile> witness_profile;
    std::optional<Lottery> witness_lottery;
    std::string candidate_optimum;  // alternative minimising the cost under the witness
    Objective objective = Objective::Sum;
    std::size_t lp_solves = 0;
};

/// Expected cost over the cheapest alternative's cost; kInfinity if that cost is
/// zero (below 1e-12) while the expected cost is positive, 1 if both are zero.
double distortion_given_metric(const Lottery& lottery, const MetricSpace& metric, Objective objective);

/// Supremum of the sum distortion over all consistent metrics allowed by `options`.
DistortionReport sum_distortion_oracle(const PreferenceProfile& profile, const Lottery& lottery,
                                       const OracleOptions& options);

/// True iff some allowed metric with every distance at most 1 gives an
/// alternative zero cost and the lottery positive expected cost.
bool sum_unboundedness_probe(const PreferenceProfile& profile, const Lottery& lottery,
                             const OracleOptions& options);

/// Supremum of the median distortion. Exponential in n; throws ValidationError
/// beyond options.max_n / options.max_m.
DistortionReport median_distortion_oracle(const PreferenceProfile& profile, const Lottery& lottery,
                                          const OracleOptions& options);

DistortionReport distortion_oracle(const PreferenceProfile& profile, const Lottery& lottery,
                                   Objective objective, const OracleOptions& options);

inline constexpr std::uint64_t kProfileBudget = 1000000;

/// Maximum of the oracle over every n-voter profile on m alternatives (up to
/// voter permutation). The first profile attaining the maximum is the witness.
/// Throws ValidationError when (m!)^n exceeds kProfileBudget.
DistortionReport mechanism_worst_case(const Mechanism& mechanism, std::size_t n, std::size_t m,
                                      Objective objective, const OracleOptions& options);

/// Largest distortion found over random allowed metrics (vertices of the
/// constraint polytope and mixtures of them) plus any `seeds`. Never above the
/// oracle value.
double sampling_lower_bound(const PreferenceProfile& profile, const Lottery& lottery, Objective objective,
                            const OracleOptions& options, std::size_t samples, std::uint64_t seed,
                            const std::vector<MetricSpace>& seeds = {});

}  // namespace mdist
