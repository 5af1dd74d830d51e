#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdist/metric.hpp"
#include "mdist/profile.hpp"

namespace mdist {

enum class Setting { General, Simplex, Euclidean1d };

const char* to_string(Setting setting);
Setting parse_setting(const std::string& text);

struct Positions {
    std::vector<double> voters;
    std::vector<double> alternatives;
};

/// A profile plus whatever ground truth accompanies it.
struct Instance {
    PreferenceProfile profile;
    std::optional<MetricSpace> metric;
    std::optional<double> alpha;
    Setting setting = Setting::General;
    std::optional<Positions> positions;

    /// The stored metric, or the one implied by positions; nullopt if neither.
    std::optional<MetricSpace> effective_metric() const;
};

/// Checks every cross-field invariant; throws ValidationError.
void validate_instance(const Instance& instance);

Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

/// JSON with keys in the order alternatives, rankings, metric, alpha, setting, positions.
std::string serialize_instance(const Instance& instance, int indent = 2);

using FamilyParams = std::map<std::string, double>;

/// Canonical constructions and random generators:
///   figure1(n, eps), figure2(n, eps), figure3(n, eps), theorem1(n, alpha),
///   theorem7_median(n, eps), random_metric(n, m, seed[, alpha]),
///   random_simplex(n, m, alpha, seed), random_euclidean1d(n, m, seed).
Instance generate_family(const std::string& name, const FamilyParams& params);

std::vector<std::string> family_names();

}  // namespace mdist
