#include "mdist/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdist/distortion.hpp"
#include "mdist/euclid.hpp"
#include "mdist/instance.hpp"
#include "mdist/mechanisms.hpp"
#include "mdist/report.hpp"
#include "mdist/tournament.hpp"

namespace mdist {

namespace {

struct Flags {
    std::string instance;
    std::string profile;
    std::string family;
    std::string mechanism = "rd";
    std::optional<double> alpha;
    std::string objective = "sum";
    std::string setting;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<double> eps;
    std::string format = "table";
    double tolerance = 1e-7;
    std::size_t max_n = 8;
    std::size_t max_m = 4;
    bool metric_given = false;
    std::string output;
};

Instance load_input(const Flags& f) {
    const int given = !f.instance.empty() + !f.profile.empty();
    if (given != 1) throw ValidationError("pass exactly one of --instance or --profile");
    if (!f.instance.empty()) return load_instance(f.instance);
    Instance inst{PreferenceProfile::from_string(f.profile), std::nullopt, std::nullopt, Setting::General,
                  std::nullopt};
    return inst;
}

std::string witness_of(const Flags& f, const PreferenceProfile& profile) {
    std::string w = f.instance.empty() ? "profile:" + profile.to_string() : "instance:" + f.instance;
    if (f.samples > 0) w += ";samples=" + std::to_string(f.samples) + ";seed=" + std::to_string(f.seed);
    return w;
}

OracleOptions oracle_options(const Flags& f, double alpha, Setting setting) {
    OracleOptions o;
    o.alpha = alpha;
    o.setting = setting;
    o.tolerance = f.tolerance;
    o.max_n = f.max_n;
    o.max_m = f.max_m;
    return o;
}

int cmd_eval(const Flags& f, std::ostream& out) {
    const Instance inst = load_input(f);
    const auto& profile = inst.profile;
    const double alpha = f.alpha.value_or(inst.alpha.value_or(1.0));
    const Setting setting = f.setting.empty() ? inst.setting : parse_setting(f.setting);
    const Objective objective = parse_objective(f.objective);
    const Mechanism mechanism{parse_mechanism(f.mechanism), alpha};
    const Lottery lottery = apply_mechanism(mechanism, profile);

    ReportRow row{to_string(mechanism.id), to_string(objective), to_string(setting), alpha,
                  profile.num_voters(), profile.num_alternatives(), 1.0, witness_of(f, profile)};
    if (f.metric_given) {
        const auto metric = inst.effective_metric();
        if (!metric) throw ValidationError("--metric-given needs an instance with a metric or positions");
        row.value = distortion_given_metric(lottery, *metric, objective);
        row.witness = "metric:" + (f.instance.empty() ? profile.to_string() : f.instance);
    } else {
        auto options = oracle_options(f, alpha, setting);
        if (setting == Setting::Euclidean1d) {
            if (inst.positions) {
                options.embedding = inst.positions;
            } else {
                const auto e = recognize_1d(profile);
                if (!e) throw ValidationError("profile is not 1-Euclidean");
                options.embedding = Positions{e->voter_positions, e->alternative_positions};
            }
        }
        if (f.samples > 0) {
            std::vector<MetricSpace> seeds;
            if (auto metric = inst.effective_metric()) seeds.push_back(*metric);
            row.value = sampling_lower_bound(profile, lottery, objective, options, f.samples, f.seed, seeds);
        } else {
            row.value = distortion_oracle(profile, lottery, objective, options).value;
        }
    }
    Report report{{row}};
    if (f.format == "table") out << "lottery: " << lottery.to_string() << '\n';
    render_report(report, parse_format(f.format), out);
    return 0;
}

int cmd_worst_case(const Flags& f, std::ostream& out) {
    if (f.n == 0 || f.m == 0) throw ValidationError("worst-case needs --n and --m");
    const double alpha = f.alpha.value_or(1.0);
    const Setting setting = f.setting.empty() ? Setting::General : parse_setting(f.setting);
    const Objective objective = parse_objective(f.objective);
    const Mechanism mechanism{parse_mechanism(f.mechanism), alpha};
    const auto result = mechanism_worst_case(mechanism, f.n, f.m, objective, oracle_options(f, alpha, setting));
    ReportRow row{to_string(mechanism.id), to_string(objective), to_string(setting), alpha, f.n, f.m,
                  result.value, "profile:" + result.witness_profile->to_string()};
    Report report{{row}};
    render_report(report, parse_format(f.format), out);
    if (f.format == "table") {
        out << "witness profile: " << result.witness_profile->to_string() << '\n';
        out << "witness lottery: " << result.witness_lottery->to_string() << '\n';
    }
    return 0;
}

int cmd_mincover(const Flags& f, std::ostream& out) {
    const Instance inst = load_input(f);
    const auto graph = majority_graph(inst.profile);
    const auto result = min_cover_lottery(graph);
    const auto pi = coverage(graph, result.lottery);
    if (f.format == "jsonl") {
        nlohmann::ordered_json doc;
        nlohmann::ordered_json lottery, cov, members = nlohmann::ordered_json::array();
        for (std::size_t y = 0; y < graph.size(); ++y) {
            lottery[graph.vertices()[y]] = result.lottery[y];
            cov[graph.vertices()[y]] = pi[y];
        }
        for (auto y : result.members) members.push_back(graph.vertices()[y]);
        doc["uncovered_set"] = members;
        doc["lottery"] = lottery;
        doc["p_max"] = result.p_max;
        doc["b_min"] = result.b_min;
        doc["coverage"] = cov;
        doc["certified"] = result.certificate.certified();
        out << doc.dump() << '\n';
        return 0;
    }
    out << std::fixed << std::setprecision(4);
    out << "uncovered set:";
    for (auto y : result.members) out << ' ' << graph.vertices()[y];
    out << "\nlottery: " << result.lottery.to_string() << '\n';
    out << "p_max = " << result.p_max << "\nb_min = " << result.b_min << '\n';
    out << "certificate: " << result.certificate.summary() << '\n';
    out << std::left << std::setw(12) << "alternative" << std::right << std::setw(10) << "coverage" << '\n';
    for (std::size_t y = 0; y < graph.size(); ++y)
        out << std::left << std::setw(12) << graph.vertices()[y] << std::right << std::setw(10) << pi[y] << '\n';
    return 0;
}

int cmd_recognize(const Flags& f, std::ostream& out) {
    const Instance inst = load_input(f);
    const auto& profile = inst.profile;
    const auto e = recognize_1d(profile);
    if (f.format == "jsonl") {
        nlohmann::ordered_json doc;
        doc["euclidean1d"] = e.has_value();
        if (e) {
            nlohmann::ordered_json axis = nlohmann::ordered_json::array();
            for (auto a : e->axis) axis.push_back(profile.name(a));
            doc["axis"] = axis;
            doc["alternative_positions"] = e->alternative_positions;
            doc["voter_positions"] = e->voter_positions;
        }
        out << doc.dump() << '\n';
        return 0;
    }
    if (!e) {
        out << "not 1-Euclidean\n";
        return 0;
    }
    out << "axis:";
    for (auto a : e->axis) out << ' ' << profile.name(a);
    out << '\n' << std::fixed << std::setprecision(4);
    for (std::size_t a = 0; a < profile.num_alternatives(); ++a)
        out << profile.name(a) << " at " << e->alternative_positions[a] << '\n';
    for (std::size_t i = 0; i < profile.num_voters(); ++i) out << "v" << i << " at " << e->voter_positions[i] << '\n';
    return 0;
}

int cmd_generate(const Flags& f, std::ostream& out) {
    if (f.family.empty()) throw ValidationError("generate needs --family");
    FamilyParams params;
    if (f.n) params["n"] = static_cast<double>(f.n);
    if (f.m) params["m"] = static_cast<double>(f.m);
    if (f.alpha) params["alpha"] = *f.alpha;
    if (f.eps) params["eps"] = *f.eps;
    params["seed"] = static_cast<double>(f.seed);
    const auto text = serialize_instance(generate_family(f.family, params));
    if (f.output.empty()) {
        out << text << '\n';
    } else {
        std::ofstream file(f.output);
        if (!file) throw ValidationError("cannot write '" + f.output + "'");
        file << text << '\n';
    }
    return 0;
}

// Worst-case distortion per mechanism, objective and setting at small n, m.
int cmd_table1(const Flags& f, std::ostream& out) {
    struct Cell {
        MechanismId mechanism;
        Objective objective;
        Setting setting;
        std::size_t n, m;
    };
    const std::vector<Cell> cells{
        {MechanismId::RandomizedDictatorship, Objective::Sum, Setting::General, 6, 2},
        {MechanismId::AlphaGpts, Objective::Sum, Setting::General, 6, 2},
        {MechanismId::Copeland, Objective::Sum, Setting::General, 3, 3},
        {MechanismId::Plurality, Objective::Sum, Setting::Simplex, 4, 3},
        {MechanismId::ProportionalToSquares, Objective::Sum, Setting::Simplex, 4, 3},
        {MechanismId::MinCover, Objective::Median, Setting::General, 3, 3},
        {MechanismId::Majority, Objective::Median, Setting::Simplex, 3, 3},
    };
    std::vector<double> alphas{0.0, 0.5, 1.0};
    if (f.alpha) alphas = {*f.alpha};
    Report report;
    for (const auto& c : cells)
        for (double a : alphas) {
            const std::size_t n = f.n ? f.n : c.n, m = c.mechanism == MechanismId::AlphaGpts ? 2 : (f.m ? f.m : c.m);
            const auto r = mechanism_worst_case({c.mechanism, a}, n, m, c.objective, oracle_options(f, a, c.setting));
            report.rows.push_back({to_string(c.mechanism), to_string(c.objective), to_string(c.setting), a, n, m,
                                   r.value, "profile:" + r.witness_profile->to_string()});
        }
    report.sort();
    render_report(report, parse_format(f.format), out);
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distortion of randomized social choice mechanisms under metric preferences", "mdist"};
    app.require_subcommand(1);
    Flags f;
    const std::vector<std::string> mechanisms{"rd",        "plurality", "pts",      "gpts",      "copeland",
                                              "condorcet", "majority",  "mincover", "algorithm1"};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", f.format, "table or jsonl")->check(CLI::IsMember({"table", "jsonl"}));
        sub->add_option("--tolerance", f.tolerance, "oracle tolerance")->check(CLI::PositiveNumber);
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--instance", f.instance, "instance JSON file");
        sub->add_option("--profile", f.profile, "profile such as \"A>B;B>A\"");
    };
    auto add_oracle = [&](CLI::App* sub) {
        sub->add_option("--mechanism", f.mechanism, "mechanism")->check(CLI::IsMember(mechanisms));
        sub->add_option("--alpha", f.alpha, "decisiveness bound")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--objective", f.objective, "sum or median")->check(CLI::IsMember({"sum", "median"}));
        sub->add_option("--setting", f.setting, "general, simplex or euclidean1d")
            ->check(CLI::IsMember({"general", "simplex", "euclidean1d"}));
        sub->add_option("--max-n", f.max_n, "median oracle voter limit");
        sub->add_option("--max-m", f.max_m, "median oracle alternative limit");
    };

    auto* eval = app.add_subcommand("eval", "distortion of a mechanism on one profile");
    add_input(eval);
    add_oracle(eval);
    add_common(eval);
    eval->add_flag("--metric-given", f.metric_given, "use the instance metric instead of the worst case");
    eval->add_option("--samples", f.samples, "sampled lower bound instead of the exact oracle");
    eval->add_option("--seed", f.seed, "sampling seed");

    auto* worst = app.add_subcommand("worst-case", "worst case over all profiles of a given size");
    add_oracle(worst);
    add_common(worst);
    worst->add_option("--n", f.n, "voters")->required();
    worst->add_option("--m", f.m, "alternatives")->required();

    auto* mincover = app.add_subcommand("mincover", "uncovered-set min-cover lottery");
    add_input(mincover);
    add_common(mincover);

    auto* recognize = app.add_subcommand("recognize", "1-Euclidean recognition");
    add_input(recognize);
    add_common(recognize);

    auto* generate = app.add_subcommand("generate", "write an instance from a named family");
    generate->add_option("--family", f.family, "family name")->required()->check(CLI::IsMember(family_names()));
    generate->add_option("--n", f.n, "voters");
    generate->add_option("--m", f.m, "alternatives");
    generate->add_option("--alpha", f.alpha, "decisiveness")->check(CLI::Range(0.0, 1.0));
    generate->add_option("--eps", f.eps, "construction epsilon");
    generate->add_option("--seed", f.seed, "random seed");
    generate->add_option("--output", f.output, "output path (default stdout)");

    auto* table1 = app.add_subcommand("table1", "worst-case matrix over mechanisms, objectives and settings");
    add_common(table1);
    table1->add_option("--alpha", f.alpha, "single alpha instead of 0, 0.5, 1")->check(CLI::Range(0.0, 1.0));
    table1->add_option("--n", f.n, "override voters");
    table1->add_option("--m", f.m, "override alternatives");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(f, out);
        if (worst->parsed()) return cmd_worst_case(f, out);
        if (mincover->parsed()) return cmd_mincover(f, out);
        if (recognize->parsed()) return cmd_recognize(f, out);
        if (generate->parsed()) return cmd_generate(f, out);
        if (table1->parsed()) return cmd_table1(f, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace mdist
