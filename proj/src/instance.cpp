#include "mdist/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mdist {

using json = nlohmann::ordered_json;

const char* to_string(Setting setting) {
    switch (setting) {
        case Setting::General: return "general";
        case Setting::Simplex: return "simplex";
        case Setting::Euclidean1d: return "euclidean1d";
    }
    return "general";
}

Setting parse_setting(const std::string& text) {
    if (text == "general") return Setting::General;
    if (text == "simplex") return Setting::Simplex;
    if (text == "euclidean1d") return Setting::Euclidean1d;
    throw ValidationError("unknown setting '" + text + "'");
}

std::optional<MetricSpace> Instance::effective_metric() const {
    if (metric) return metric;
    if (positions)
        return MetricSpace::from_positions(default_voter_ids(profile.num_voters()), profile.alternatives(),
                                           positions->voters, positions->alternatives);
    return std::nullopt;
}

void validate_instance(const Instance& inst) {
    const auto& profile = inst.profile;
    const std::size_t n = profile.num_voters(), m = profile.num_alternatives();
    if (inst.alpha && !(*inst.alpha >= 0.0 && *inst.alpha <= 1.0))
        throw ValidationError("alpha must lie in [0,1]");
    if (inst.positions) {
        if (inst.setting != Setting::Euclidean1d)
            throw ValidationError("positions are only allowed with setting euclidean1d");
        if (inst.positions->voters.size() != n || inst.positions->alternatives.size() != m)
            throw ValidationError("positions do not match the number of voters/alternatives");
    }
    if (inst.metric) {
        const auto& d = *inst.metric;
        if (d.num_voters() != n || d.alternatives() != profile.alternatives())
            throw ValidationError("metric points do not match the profile");
        if (inst.positions) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t y = 0; y < m; ++y)
                    if (std::abs(d.voter_alt(i, y) - std::abs(inst.positions->voters[i] - inst.positions->alternatives[y])) >
                        kMetricTolerance)
                        throw ValidationError("metric disagrees with positions");
            for (std::size_t y = 0; y < m; ++y)
                for (std::size_t z = 0; z < m; ++z)
                    if (std::abs(d.alt_alt(y, z) - std::abs(inst.positions->alternatives[y] - inst.positions->alternatives[z])) >
                        kMetricTolerance)
                        throw ValidationError("metric disagrees with positions");
        }
        if (inst.setting == Setting::Simplex) {
            for (std::size_t y = 0; y < m; ++y)
                for (std::size_t z = 0; z < m; ++z)
                    if (y != z && std::abs(d.alt_alt(y, z) - 1.0) > kMetricTolerance)
                        throw ValidationError("simplex setting requires unit distances between alternatives");
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t y = 0; y < m; ++y)
                    if (d.voter_alt(i, y) > 1.0 + kMetricTolerance)
                        throw ValidationError("simplex setting requires voters within distance 1 of every alternative");
        }
    }
    if (auto d = inst.effective_metric()) {
        if (!is_consistent(profile, *d)) throw ValidationError("profile is not consistent with the metric");
        if (inst.alpha && m >= 2 && decisiveness_alpha(profile, *d) > *inst.alpha + kMetricTolerance)
            throw ValidationError("metric is not alpha-decisive for the stated alpha");
    }
}

namespace {

std::vector<double> number_array(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ValidationError(std::string(what) + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Instance from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("instance document must be a JSON object");
    if (!doc.contains("alternatives") || !doc["alternatives"].is_array())
        throw ValidationError("missing 'alternatives' array");
    if (!doc.contains("rankings") || !doc["rankings"].is_array())
        throw ValidationError("missing 'rankings' array");
    std::vector<std::string> alts;
    for (const auto& a : doc["alternatives"]) {
        if (!a.is_string()) throw ValidationError("alternative ids must be strings");
        alts.push_back(a.get<std::string>());
    }
    std::vector<std::vector<std::string>> rankings;
    for (std::size_t i = 0; i < doc["rankings"].size(); ++i) {
        const auto& r = doc["rankings"][i];
        if (!r.is_array()) throw ValidationError("ranking " + std::to_string(i + 1) + " is not an array");
        std::vector<std::string> names;
        for (const auto& a : r) {
            if (!a.is_string()) throw ValidationError("ranking " + std::to_string(i + 1) + " is not a permutation");
            names.push_back(a.get<std::string>());
        }
        rankings.push_back(std::move(names));
    }
    Instance inst{PreferenceProfile(alts, rankings), std::nullopt, std::nullopt, Setting::General, std::nullopt};
    const std::size_t n = inst.profile.num_voters();

    if (doc.contains("metric") && !doc["metric"].is_null()) {
        const auto& jm = doc["metric"];
        if (!jm.is_object() || !jm.contains("points") || !jm.contains("distances"))
            throw ValidationError("metric needs 'points' and 'distances'");
        std::vector<std::string> points;
        for (const auto& p : jm["points"]) {
            if (!p.is_string()) throw ValidationError("metric points must be strings");
            points.push_back(p.get<std::string>());
        }
        const std::size_t P = points.size();
        std::vector<double> flat;
        for (const auto& row : jm["distances"]) {
            if (row.is_array()) {
                auto vals = number_array(row, "distance row");
                if (vals.size() != P) throw ValidationError("distance matrix is not square over the points");
                flat.insert(flat.end(), vals.begin(), vals.end());
            } else if (row.is_number()) {
                flat.push_back(row.get<double>());
            } else {
                throw ValidationError("distances must be numbers");
            }
        }
        if (flat.size() != P * P) throw ValidationError("distance matrix is not square over the points");
        // Voters are the non-alternative points, in order of appearance.
        std::vector<std::size_t> perm;
        std::vector<std::string> voter_ids;
        for (std::size_t k = 0; k < P; ++k)
            if (std::find(alts.begin(), alts.end(), points[k]) == alts.end()) {
                perm.push_back(k);
                voter_ids.push_back(points[k]);
            }
        if (voter_ids.size() != n) throw ValidationError("metric must contain exactly one point per voter");
        for (const auto& a : alts) {
            auto it = std::find(points.begin(), points.end(), a);
            if (it == points.end()) throw ValidationError("metric is missing alternative '" + a + "'");
            perm.push_back(static_cast<std::size_t>(it - points.begin()));
        }
        if (perm.size() != P) throw ValidationError("metric has duplicate points");
        std::vector<double> d(P * P);
        for (std::size_t a = 0; a < P; ++a)
            for (std::size_t b = 0; b < P; ++b) d[a * P + b] = flat[perm[a] * P + perm[b]];
        inst.metric.emplace(std::move(voter_ids), alts, std::move(d));
    }
    if (doc.contains("alpha") && !doc["alpha"].is_null()) {
        if (!doc["alpha"].is_number()) throw ValidationError("alpha must be a number");
        inst.alpha = doc["alpha"].get<double>();
    }
    if (doc.contains("setting")) {
        if (!doc["setting"].is_string()) throw ValidationError("setting must be a string");
        inst.setting = parse_setting(doc["setting"].get<std::string>());
    }
    if (doc.contains("positions") && !doc["positions"].is_null()) {
        const auto& jp = doc["positions"];
        if (!jp.is_object() || !jp.contains("voters") || !jp.contains("alternatives"))
            throw ValidationError("positions need 'voters' and 'alternatives'");
        inst.positions = Positions{number_array(jp["voters"], "voter positions"),
                                   number_array(jp["alternatives"], "alternative positions")};
    }
    validate_instance(inst);
    return inst;
}

}  // namespace

Instance parse_instance(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed document: ") + e.what());
    }
    return from_json(doc);
}

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

std::string serialize_instance(const Instance& inst, int indent) {
    json doc;
    doc["alternatives"] = inst.profile.alternatives();
    json rankings = json::array();
    for (const auto& r : inst.profile.rankings()) {
        json row = json::array();
        for (auto a : r) row.push_back(inst.profile.name(a));
        rankings.push_back(row);
    }
    doc["rankings"] = rankings;
    if (inst.metric) {
        const auto& d = *inst.metric;
        json dist = json::array();
        for (std::size_t a = 0; a < d.num_points(); ++a) {
            json row = json::array();
            for (std::size_t b = 0; b < d.num_points(); ++b) row.push_back(d(a, b));
            dist.push_back(row);
        }
        doc["metric"] = {{"points", d.points()}, {"distances", dist}};
    }
    if (inst.alpha) doc["alpha"] = *inst.alpha;
    doc["setting"] = to_string(inst.setting);
    if (inst.positions)
        doc["positions"] = {{"voters", inst.positions->voters}, {"alternatives", inst.positions->alternatives}};
    return doc.dump(indent);
}

}  // namespace mdist
