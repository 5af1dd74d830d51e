#include "mdist/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mdist {

void OracleOptions::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0,1]");
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    if (max_n == 0 || max_m == 0) throw ValidationError("limits must be positive");
    if (setting == Setting::Euclidean1d && !embedding)
        throw ValidationError("euclidean1d oracle needs the generating embedding");
    if (full_metric && setting != Setting::General)
        throw ValidationError("the all-pairs formulation is only available for the general setting");
}

double distortion_given_metric(const Lottery& lottery, const MetricSpace& metric, Objective objective) {
    if (lottery.alternatives() != metric.alternatives())
        throw ValidationError("lottery and metric disagree on the alternatives");
    const double expected = expected_social_cost(lottery, metric, objective);
    double best = kInfinity;
    for (std::size_t y = 0; y < metric.num_alternatives(); ++y)
        best = std::min(best, social_cost(metric, y, objective));
    if (best < 1e-12) return expected < 1e-12 ? 1.0 : kInfinity;
    return expected / best;
}

namespace {

using Mask = std::uint32_t;

void append(LinearExpr& e, const LinearExpr& x, double c) {
    for (const auto& t : x) e.push_back({t.var, t.coef * c});
}

void closure(std::vector<double>& d, std::size_t P) {
    for (std::size_t k = 0; k < P; ++k)
        for (std::size_t a = 0; a < P; ++a)
            for (std::size_t b = 0; b < P; ++b)
                d[a * P + b] = std::min(d[a * P + b], d[a * P + k] + d[k * P + b]);
}

// Variables and constraints describing every metric the adversary may pick,
// up to scale. Distances are exposed as linear expressions.
//
//   general: b(i,Y) per voter-alternative pair and D(Y,Z) per alternative pair.
//            Voter-voter distances are implied (min over Y of b(i,Y) + b(j,Y)),
//            so only triangles through at most one voter are needed.
//   full:    one variable per point pair with every triangle inequality.
//   simplex: b(i,Y) plus a scale t with D(Y,Z) = t and b(i,Y) <= t.
//   euclid:  gaps between consecutive points in the fixed embedding order.
class MetricModel {
public:
    MetricModel(LinearProgram& lp, const PreferenceProfile& profile, const OracleOptions& options)
        : n_(profile.num_voters()), m_(profile.num_alternatives()), setting_(options.setting),
          full_(options.full_metric), alternatives_(profile.alternatives()) {
        va_.resize(n_ * m_);
        aa_.resize(m_ * m_);
        if (setting_ == Setting::Euclidean1d) build_line(lp, *options.embedding);
        else if (full_) build_full(lp);
        else build_bipartite(lp);
        add_preferences(lp, profile, options.alpha);
    }

    const LinearExpr& va(std::size_t i, std::size_t y) const { return va_[i * m_ + y]; }
    const std::vector<std::size_t>& structural() const { return structural_; }
    std::optional<std::size_t> scale() const { return scale_; }

    MetricSpace extract(const std::vector<double>& x) const {
        auto value = [&](const LinearExpr& e) {
            double v = 0.0;
            for (const auto& t : e) v += t.coef * x[t.var];
            return std::max(v, 0.0);
        };
        if (setting_ == Setting::Euclidean1d) {
            const std::size_t P = n_ + m_;
            std::vector<double> coord(P, 0.0);
            for (std::size_t k = 0; k + 1 < P; ++k)
                coord[order_[k + 1]] = coord[order_[k]] + std::max(x[gaps_[k]], 0.0);
            std::vector<double> voters(coord.begin(), coord.begin() + static_cast<long>(n_));
            std::vector<double> alts(coord.begin() + static_cast<long>(n_), coord.end());
            return MetricSpace::from_positions(default_voter_ids(n_), alternatives_, voters, alts);
        }
        const std::size_t P = n_ + m_;
        std::vector<double> d(P * P, 0.0);
        double unit = 1.0;
        if (scale_ && x[*scale_] > 1e-15) unit = x[*scale_];
        if (full_) {
            for (std::size_t a = 0; a < P; ++a)
                for (std::size_t b = a + 1; b < P; ++b)
                    d[a * P + b] = d[b * P + a] = std::max(x[pair_[a * P + b]], 0.0);
        } else {
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t y = 0; y < m_; ++y)
                    d[i * P + n_ + y] = d[(n_ + y) * P + i] = value(va(i, y)) / unit;
            for (std::size_t y = 0; y < m_; ++y)
                for (std::size_t z = 0; z < m_; ++z)
                    if (y != z) d[(n_ + y) * P + n_ + z] = value(aa_[y * m_ + z]) / unit;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j) {
                    if (i == j) continue;
                    double best = kInfinity;
                    for (std::size_t y = 0; y < m_; ++y)
                        best = std::min(best, d[i * P + n_ + y] + d[j * P + n_ + y]);
                    d[i * P + j] = best;
                }
        }
        closure(d, P);
        return MetricSpace(default_voter_ids(n_), alternatives_, std::move(d));
    }

private:
    void build_bipartite(LinearProgram& lp) {
        if (setting_ == Setting::Simplex) {
            scale_ = lp.add_variable("t");
            structural_.push_back(*scale_);
        }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t y = 0; y < m_; ++y) {
                const auto v = lp.add_variable("b_" + std::to_string(i) + "_" + alternatives_[y]);
                structural_.push_back(v);
                va_[i * m_ + y] = {{v, 1.0}};
            }
        for (std::size_t y = 0; y < m_; ++y)
            for (std::size_t z = y + 1; z < m_; ++z) {
                LinearExpr e;
                if (scale_) {
                    e = {{*scale_, 1.0}};
                } else {
                    const auto v = lp.add_variable("D_" + alternatives_[y] + "_" + alternatives_[z]);
                    structural_.push_back(v);
                    e = {{v, 1.0}};
                }
                aa_[y * m_ + z] = aa_[z * m_ + y] = e;
            }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t y = 0; y < m_; ++y) {
                if (scale_) {
                    LinearExpr row = va(i, y);
                    row.push_back({*scale_, -1.0});
                    lp.add_constraint(std::move(row), Relation::LessEqual, 0.0);
                }
                for (std::size_t z = 0; z < m_; ++z) {
                    if (z == y) continue;
                    // d(i,Y) <= d(i,Z) + d(Z,Y)
                    LinearExpr row = va(i, y);
                    append(row, va(i, z), -1.0);
                    append(row, aa_[z * m_ + y], -1.0);
                    lp.add_constraint(std::move(row), Relation::LessEqual, 0.0);
                    if (z > y) {
                        // d(Y,Z) <= d(i,Y) + d(i,Z)
                        LinearExpr tri = aa_[y * m_ + z];
                        append(tri, va(i, y), -1.0);
                        append(tri, va(i, z), -1.0);
                        lp.add_constraint(std::move(tri), Relation::LessEqual, 0.0);
                    }
                }
            }
        if (!scale_) {
            for (std::size_t y = 0; y < m_; ++y)
                for (std::size_t w = y + 1; w < m_; ++w)
                    for (std::size_t z = 0; z < m_; ++z) {
                        if (z == y || z == w) continue;
                        LinearExpr row = aa_[y * m_ + w];
                        append(row, aa_[y * m_ + z], -1.0);
                        append(row, aa_[z * m_ + w], -1.0);
                        lp.add_constraint(std::move(row), Relation::LessEqual, 0.0);
                    }
        }
    }

    void build_full(LinearProgram& lp) {
        const std::size_t P = n_ + m_;
        pair_.assign(P * P, 0);
        for (std::size_t a = 0; a < P; ++a)
            for (std::size_t b = a + 1; b < P; ++b) {
                const auto v = lp.add_variable("d_" + std::to_string(a) + "_" + std::to_string(b));
                structural_.push_back(v);
                pair_[a * P + b] = pair_[b * P + a] = v;
            }
        for (std::size_t a = 0; a < P; ++a)
            for (std::size_t c = a + 1; c < P; ++c)
                for (std::size_t b = 0; b < P; ++b) {
                    if (b == a || b == c) continue;
                    lp.add_constraint({{pair_[a * P + c], 1.0}, {pair_[a * P + b], -1.0}, {pair_[b * P + c], -1.0}},
                                      Relation::LessEqual, 0.0);
                }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t y = 0; y < m_; ++y) va_[i * m_ + y] = {{pair_[i * P + n_ + y], 1.0}};
        for (std::size_t y = 0; y < m_; ++y)
            for (std::size_t z = 0; z < m_; ++z)
                if (y != z) aa_[y * m_ + z] = {{pair_[(n_ + y) * P + n_ + z], 1.0}};
    }

    void build_line(LinearProgram& lp, const Positions& embedding) {
        if (embedding.voters.size() != n_ || embedding.alternatives.size() != m_)
            throw ValidationError("embedding does not match the profile");
        const std::size_t P = n_ + m_;
        std::vector<double> coord = embedding.voters;
        coord.insert(coord.end(), embedding.alternatives.begin(), embedding.alternatives.end());
        order_.resize(P);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return coord[a] < coord[b]; });
        std::vector<std::size_t> slot(P);
        for (std::size_t k = 0; k < P; ++k) slot[order_[k]] = k;
        for (std::size_t k = 0; k + 1 < P; ++k) {
            gaps_.push_back(lp.add_variable("g_" + std::to_string(k)));
            structural_.push_back(gaps_.back());
        }
        auto between = [&](std::size_t a, std::size_t b) {
            LinearExpr e;
            const auto lo = std::min(slot[a], slot[b]), hi = std::max(slot[a], slot[b]);
            for (std::size_t k = lo; k < hi; ++k) e.push_back({gaps_[k], 1.0});
            return e;
        };
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t y = 0; y < m_; ++y) va_[i * m_ + y] = between(i, n_ + y);
        for (std::size_t y = 0; y < m_; ++y)
            for (std::size_t z = 0; z < m_; ++z)
                if (y != z) aa_[y * m_ + z] = between(n_ + y, n_ + z);
    }

    void add_preferences(LinearProgram& lp, const PreferenceProfile& profile, double alpha) {
        for (std::size_t i = 0; i < n_; ++i) {
            const auto& r = profile.ranking(i);
            for (std::size_t k = 0; k + 1 < m_; ++k) {
                LinearExpr row = va(i, r[k]);
                append(row, va(i, r[k + 1]), k == 0 ? -alpha : -1.0);
                lp.add_constraint(std::move(row), Relation::LessEqual, 0.0);
            }
        }
    }

    std::size_t n_, m_;
    Setting setting_;
    bool full_;
    std::vector<std::string> alternatives_;
    std::vector<LinearExpr> va_, aa_;
    std::vector<std::size_t> structural_;
    std::optional<std::size_t> scale_;
    std::vector<std::size_t> pair_;
    std::vector<std::size_t> order_, gaps_;
};

void check_inputs(const PreferenceProfile& profile, const Lottery& lottery, const OracleOptions& options) {
    options.validate();
    if (profile.num_alternatives() < 2) throw ValidationError("the oracle needs at least two alternatives");
    if (lottery.alternatives() != profile.alternatives())
        throw ValidationError("lottery and profile disagree on the alternatives");
}

LPSolution solve_checked(const LinearProgram& lp, const OracleOptions& options, std::size_t& counter) {
    ++counter;
    auto sol = solve_audited(lp, options.audit);
    if (sol.status == LPStatus::SolverFailure) throw std::runtime_error("LP solver failed inside the oracle");
    return sol;
}

void add_expected_cost_objective(LinearProgram& lp, const MetricModel& model, const Lottery& lottery,
                                 std::size_t n) {
    for (std::size_t y = 0; y < lottery.size(); ++y) {
        if (lottery[y] <= 0.0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& t : model.va(i, y)) lp.add_objective(t.var, lottery[y] * t.coef);
    }
}

void add_box(LinearProgram& lp, const MetricModel& model) {
    for (auto v : model.structural()) lp.add_constraint({{v, 1.0}}, Relation::LessEqual, 1.0);
}

struct ProbeHit {
    std::size_t optimum;
    MetricSpace witness;
};

std::optional<ProbeHit> run_sum_probe(const PreferenceProfile& profile, const Lottery& lottery,
                                      const OracleOptions& options, std::size_t& counter) {
    const std::size_t n = profile.num_voters();
    for (std::size_t x = 0; x < profile.num_alternatives(); ++x) {
        LinearProgram lp;
        lp.set_sense(Sense::Maximize);
        MetricModel model(lp, profile, options);
        for (std::size_t i = 0; i < n; ++i) lp.add_constraint(model.va(i, x), Relation::LessEqual, 0.0);
        add_box(lp, model);
        add_expected_cost_objective(lp, model, lottery, n);
        const auto sol = solve_checked(lp, options, counter);
        if (sol.optimal() && sol.objective > options.tolerance) return ProbeHit{x, model.extract(sol.values)};
    }
    return std::nullopt;
}

}  // namespace

bool sum_unboundedness_probe(const PreferenceProfile& profile, const Lottery& lottery, const OracleOptions& options) {
    check_inputs(profile, lottery, options);
    std::size_t counter = 0;
    return run_sum_probe(profile, lottery, options, counter).has_value();
}

DistortionReport sum_distortion_oracle(const PreferenceProfile& profile, const Lottery& lottery,
                                       const OracleOptions& options) {
    check_inputs(profile, lottery, options);
    DistortionReport report;
    report.objective = Objective::Sum;
    if (auto hit = run_sum_probe(profile, lottery, options, report.lp_solves)) {
        report.infinite = true;
        report.value = kInfinity;
        report.candidate_optimum = profile.name(hit->optimum);
        report.witness_metric = std::move(hit->witness);
        return report;
    }
    const std::size_t n = profile.num_voters(), m = profile.num_alternatives();
    double best = -1.0;
    for (std::size_t x = 0; x < m; ++x) {
        LinearProgram lp;
        lp.set_sense(Sense::Maximize);
        MetricModel model(lp, profile, options);
        for (std::size_t y = 0; y < m; ++y) {
            LinearExpr total;
            for (std::size_t i = 0; i < n; ++i) append(total, model.va(i, y), 1.0);
            // X costs exactly 1 and nothing is cheaper.
            lp.add_constraint(std::move(total), y == x ? Relation::Equal : Relation::GreaterEqual, 1.0);
        }
        add_expected_cost_objective(lp, model, lottery, n);
        const auto sol = solve_checked(lp, options, report.lp_solves);
        if (sol.status == LPStatus::Infeasible) continue;
        if (sol.status == LPStatus::Unbounded) {
            report.infinite = true;
            report.value = kInfinity;
            report.candidate_optimum = profile.name(x);
            report.witness_metric.reset();
            return report;
        }
        if (sol.objective > best) {
            best = sol.objective;
            report.candidate_optimum = profile.name(x);
            report.witness_metric = model.extract(sol.values);
        }
    }
    report.value = std::max(best, 1.0);
    return report;
}

namespace {

struct Partition {
    std::vector<std::vector<std::size_t>> groups;
};

// Every subset of the given size that takes a prefix of each group.
std::vector<Mask> prefix_subsets(const Partition& part, std::size_t size) {
    std::vector<Mask> out;
    std::vector<std::size_t> take(part.groups.size(), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t g, std::size_t left) {
        if (g == part.groups.size()) {
            if (left != 0) return;
            Mask mask = 0;
            for (std::size_t h = 0; h < take.size(); ++h)
                for (std::size_t k = 0; k < take[h]; ++k) mask |= Mask{1} << part.groups[h][k];
            out.push_back(mask);
            return;
        }
        const std::size_t cap = std::min(left, part.groups[g].size());
        for (std::size_t c = cap + 1; c-- > 0;) {
            take[g] = c;
            rec(g + 1, left - c);
        }
    };
    rec(0, size);
    return out;
}

Partition refine(const Partition& part, Mask mask) {
    Partition out;
    for (const auto& g : part.groups) {
        std::vector<std::size_t> in, rest;
        for (auto v : g) ((mask >> v) & 1U ? in : rest).push_back(v);
        if (!in.empty()) out.groups.push_back(std::move(in));
        if (!rest.empty()) out.groups.push_back(std::move(rest));
    }
    return out;
}

// Representative of the mask's orbit under permutations inside each group.
Mask canonical(Mask mask, const Partition& part) {
    Mask out = 0;
    for (const auto& g : part.groups) {
        std::size_t c = 0;
        for (auto v : g) c += (mask >> v) & 1U;
        for (std::size_t k = 0; k < c; ++k) out |= Mask{1} << g[k];
    }
    return out;
}

struct InfiniteFound {
    std::size_t optimum;
    std::optional<MetricSpace> witness;
};

// Exhaustive search over close sets (k voters within distance 1 of X) and far
// sets (n-k+1 voters at distance at least t_Y from Y), with symmetry reduction
// among voters sharing a ranking and branch-and-bound over the lottery support.
class MedianSearch {
public:
    MedianSearch(const PreferenceProfile& profile, const Lottery& lottery, const OracleOptions& options,
                 DistortionReport& report)
        : profile_(profile), lottery_(lottery), options_(options), report_(report),
          n_(profile.num_voters()), k_(n_ / 2 + 1), f_(n_ - k_ + 1), model_(skeleton_, profile, options) {
        skeleton_.set_sense(Sense::Maximize);
        support_ = lottery.support();
        line_ = options.setting == Setting::Euclidean1d;
        if (line_) {
            voter_line_.resize(n_);
            std::iota(voter_line_.begin(), voter_line_.end(), 0);
            const auto& pos = options.embedding->voters;
            std::stable_sort(voter_line_.begin(), voter_line_.end(),
                             [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
            for (std::size_t v = 0; v < n_; ++v) singletons_.groups.push_back({v});
        } else {
            std::map<Ranking, std::vector<std::size_t>> by_ranking;
            for (std::size_t i = 0; i < n_; ++i) by_ranking[profile.ranking(i)].push_back(i);
            std::vector<std::vector<std::size_t>> groups;
            for (auto& [r, g] : by_ranking) groups.push_back(std::move(g));
            std::sort(groups.begin(), groups.end());
            voters_.groups = std::move(groups);
        }
    }

    void run() {
        for (std::size_t x = 0; x < profile_.num_alternatives(); ++x) search_optimum(x);
    }

    double best() const { return best_; }

private:
    struct Single {
        double value;
        std::vector<double> x;
    };

    Mask window(std::size_t start, std::size_t len) const {
        Mask mask = 0;
        for (std::size_t k = start; k < start + len; ++k) mask |= Mask{1} << voter_line_[k];
        return mask;
    }

    std::vector<Mask> close_sets() const {
        if (!line_) return prefix_subsets(voters_, k_);
        std::vector<Mask> out;
        for (std::size_t s = 0; s + k_ <= n_; ++s) out.push_back(window(s, k_));
        return out;
    }

    // On a line the farthest voters from any point are the complement of a window.
    std::vector<Mask> far_sets(const Partition& part) const {
        if (!line_) return prefix_subsets(part, f_);
        const Mask all = n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1;
        std::vector<Mask> out;
        for (std::size_t s = 0; s + (k_ - 1) <= n_; ++s) out.push_back(all & ~window(s, k_ - 1));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    LinearProgram with_close_set(std::size_t x, Mask close) const {
        LinearProgram lp = skeleton_;
        for (std::size_t i = 0; i < n_; ++i)
            if ((close >> i) & 1U) lp.add_constraint(model_.va(i, x), Relation::LessEqual, 1.0);
        return lp;
    }

    void add_far_sets(LinearProgram& lp, const std::vector<std::pair<std::size_t, Mask>>& far) const {
        for (const auto& [y, mask] : far) {
            const auto t = lp.add_variable("t_" + profile_.name(y));
            lp.add_objective(t, lottery_[y]);
            for (std::size_t i = 0; i < n_; ++i) {
                if (!((mask >> i) & 1U)) continue;
                LinearExpr row{{t, 1.0}};
                append(row, model_.va(i, y), -1.0);
                lp.add_constraint(std::move(row), Relation::LessEqual, 0.0);
            }
        }
    }

    // Zero distance from X on the close set, unit box, one far set.
    [[noreturn]] void confirm_infinite(std::size_t x, Mask close, std::size_t y, Mask far) {
        LinearProgram lp = skeleton_;
        for (std::size_t i = 0; i < n_; ++i)
            if ((close >> i) & 1U) lp.add_constraint(model_.va(i, x), Relation::LessEqual, 0.0);
        add_box(lp, model_);
        add_far_sets(lp, {{y, far}});
        const auto sol = solve_checked(lp, options_, report_.lp_solves);
        if (!sol.optimal() || sol.objective <= options_.tolerance)
            throw std::runtime_error("median LP unbounded but the zero-median probe found no witness");
        throw InfiniteFound{x, model_.extract(sol.values)};
    }

    Single solve_far(const LinearProgram& base, const std::vector<std::pair<std::size_t, Mask>>& far,
                     std::size_t x, Mask close) {
        LinearProgram lp = base;
        add_far_sets(lp, far);
        const auto sol = solve_checked(lp, options_, report_.lp_solves);
        if (sol.status == LPStatus::Unbounded) {
            if (far.size() != 1) throw std::runtime_error("joint median LP unbounded with bounded parts");
            confirm_infinite(x, close, far[0].first, far[0].second);
        }
        if (!sol.optimal()) throw std::runtime_error("median LP unexpectedly infeasible");
        return {sol.objective, sol.values};
    }

    void record(double value, const std::vector<double>& x, std::size_t optimum) {
        if (value > best_) {
            best_ = value;
            best_x_ = x;
            report_.candidate_optimum = profile_.name(optimum);
            report_.witness_metric = model_.extract(best_x_);
        }
    }

    void search_optimum(std::size_t x) {
        struct CloseCase {
            Mask close;
            double bound;
        };
        std::vector<CloseCase> cases;
        std::map<Mask, std::map<std::pair<std::size_t, Mask>, Single>> singles_by_close;
        std::map<Mask, Partition> parts;
        for (Mask close : close_sets()) {
            const Partition part = line_ ? singletons_ : refine(voters_, close);
            const LinearProgram base = with_close_set(x, close);
            auto& singles = singles_by_close[close];
            double bound = 0.0;
            for (auto y : support_) {
                double vmax = 0.0;
                for (Mask far : far_sets(part)) {
                    auto s = solve_far(base, {{y, far}}, x, close);
                    vmax = std::max(vmax, s.value);
                    singles.emplace(std::make_pair(y, far), std::move(s));
                }
                bound += vmax;
            }
            parts.emplace(close, part);
            cases.push_back({close, bound});
        }
        std::stable_sort(cases.begin(), cases.end(), [](const CloseCase& a, const CloseCase& b) { return a.bound > b.bound; });
        for (const auto& c : cases) {
            if (c.bound <= best_ + options_.tolerance) break;
            x_ = x;
            close_ = c.close;
            close_part_ = parts.at(c.close);
            singles_ = &singles_by_close.at(c.close);
            base_ = with_close_set(x, c.close);
            // Best single value per alternative, weighted by probability.
            vmax_.clear();
            for (auto y : support_) {
                double v = 0.0;
                for (const auto& [key, s] : *singles_)
                    if (key.first == y) v = std::max(v, s.value);
                vmax_[y] = v;
            }
            order_ = support_;
            std::stable_sort(order_.begin(), order_.end(),
                             [&](std::size_t a, std::size_t b) { return vmax_[a] > vmax_[b]; });
            rest_.assign(order_.size() + 1, 0.0);
            for (std::size_t d = order_.size(); d-- > 0;) rest_[d] = rest_[d + 1] + vmax_[order_[d]];
            std::vector<std::pair<std::size_t, Mask>> chosen;
            dfs(0, close_part_, chosen, 0.0);
        }
    }

    const Single& single(std::size_t y, Mask far) const {
        return singles_->at({y, line_ ? far : canonical(far, close_part_)});
    }

    void dfs(std::size_t depth, const Partition& part, std::vector<std::pair<std::size_t, Mask>>& chosen,
             double chosen_bound) {
        if (depth == order_.size()) {
            if (chosen.size() == 1) {
                const auto& s = single(chosen[0].first, chosen[0].second);
                record(s.value, s.x, x_);
            } else {
                const auto s = solve_far(base_, chosen, x_, close_);
                record(s.value, s.x, x_);
            }
            return;
        }
        const std::size_t y = order_[depth];
        std::vector<std::pair<double, Mask>> options;
        for (Mask far : far_sets(part)) options.emplace_back(single(y, far).value, far);
        std::stable_sort(options.begin(), options.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [v, far] : options) {
            double bound = chosen_bound + v;
            if (bound + rest_[depth + 1] <= best_ + options_.tolerance) break;
            chosen.emplace_back(y, far);
            if (chosen.size() >= 2 && depth + 1 < order_.size()) {
                bound = std::min(bound, solve_far(base_, chosen, x_, close_).value);
                if (bound + rest_[depth + 1] <= best_ + options_.tolerance) {
                    chosen.pop_back();
                    continue;
                }
            }
            dfs(depth + 1, line_ ? part : refine(part, far), chosen, bound);
            chosen.pop_back();
        }
    }

    const PreferenceProfile& profile_;
    const Lottery& lottery_;
    const OracleOptions& options_;
    DistortionReport& report_;
    std::size_t n_, k_, f_;
    LinearProgram skeleton_;
    MetricModel model_;
    std::vector<std::size_t> support_;
    bool line_ = false;
    std::vector<std::size_t> voter_line_;
    Partition voters_, singletons_;

    double best_ = -1.0;
    std::vector<double> best_x_;

    // State of the close set being explored.
    std::size_t x_ = 0;
    Mask close_ = 0;
    Partition close_part_;
    const std::map<std::pair<std::size_t, Mask>, Single>* singles_ = nullptr;
    LinearProgram base_;
    std::map<std::size_t, double> vmax_;
    std::vector<std::size_t> order_;
    std::vector<double> rest_;
};

}  // namespace

DistortionReport median_distortion_oracle(const PreferenceProfile& profile, const Lottery& lottery,
                                          const OracleOptions& options) {
    check_inputs(profile, lottery, options);
    if (profile.num_voters() > options.max_n || profile.num_alternatives() > options.max_m)
        throw ValidationError("median oracle limits exceeded (n <= " + std::to_string(options.max_n) +
                              ", m <= " + std::to_string(options.max_m) + "); use sampling_lower_bound");
    if (profile.num_voters() > 31) throw ValidationError("median oracle supports at most 31 voters");
    DistortionReport report;
    report.objective = Objective::Median;
    MedianSearch search(profile, lottery, options, report);
    try {
        search.run();
    } catch (InfiniteFound& hit) {
        report.infinite = true;
        report.value = kInfinity;
        report.candidate_optimum = profile.name(hit.optimum);
        report.witness_metric = std::move(hit.witness);
        return report;
    }
    report.value = std::max(search.best(), 1.0);
    return report;
}

DistortionReport distortion_oracle(const PreferenceProfile& profile, const Lottery& lottery, Objective objective,
                                   const OracleOptions& options) {
    return objective == Objective::Sum ? sum_distortion_oracle(profile, lottery, options)
                                       : median_distortion_oracle(profile, lottery, options);
}

DistortionReport mechanism_worst_case(const Mechanism& mechanism, std::size_t n, std::size_t m, Objective objective,
                                      const OracleOptions& options) {
    if (n == 0 || m < 2) throw ValidationError("worst-case search needs n >= 1 and m >= 2");
    if (options.setting == Setting::Euclidean1d)
        throw ValidationError("worst-case search does not support the euclidean1d setting");
    double profiles = 1.0, orders = 1.0;
    for (std::size_t k = 2; k <= m; ++k) orders *= static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i) profiles *= orders;
    if (profiles > static_cast<double>(kProfileBudget))
        throw ValidationError("(m!)^n exceeds the enumeration budget of " + std::to_string(kProfileBudget));

    DistortionReport worst;
    worst.objective = objective;
    worst.value = -1.0;
    std::size_t solves = 0;
    for_each_canonical_profile(default_alternative_names(m), n, [&](const PreferenceProfile& profile) {
        if (worst.infinite) return;
        const auto lottery = apply_mechanism(mechanism, profile, options.audit);
        auto report = distortion_oracle(profile, lottery, objective, options);
        solves += report.lp_solves;
        if (report.infinite || report.value > worst.value + options.tolerance) {
            worst = std::move(report);
            worst.witness_profile = profile;
            worst.witness_lottery = lottery;
        }
    });
    worst.lp_solves = solves;
    return worst;
}

double sampling_lower_bound(const PreferenceProfile& profile, const Lottery& lottery, Objective objective,
                            const OracleOptions& options, std::size_t samples, std::uint64_t seed,
                            const std::vector<MetricSpace>& seeds) {
    check_inputs(profile, lottery, options);
    if (samples == 0) throw ValidationError("samples must be at least 1");
    double best = 1.0;
    for (const auto& metric : seeds) {
        if (!is_consistent(profile, metric)) throw ValidationError("seed metric is not consistent with the profile");
        if (decisiveness_alpha(profile, metric) > options.alpha + 1e-6)
            throw ValidationError("seed metric is not alpha-decisive");
        best = std::max(best, distortion_given_metric(lottery, metric, objective));
    }

    LinearProgram skeleton;
    skeleton.set_sense(Sense::Maximize);
    MetricModel model(skeleton, profile, options);
    if (auto t = model.scale()) {
        skeleton.add_constraint({{*t, 1.0}}, Relation::Equal, 1.0);
    } else {
        LinearExpr total;
        for (auto v : model.structural()) total.push_back({v, 1.0});
        skeleton.add_constraint(std::move(total), Relation::Equal, 1.0);
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> pool;
    constexpr std::size_t kPool = 64;
    std::size_t solves = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<double> x;
        if (pool.size() >= 2 && s % 2 == 1) {
            const auto& a = pool[rng() % pool.size()];
            const auto& b = pool[rng() % pool.size()];
            const double w = unit(rng);
            x.resize(a.size());
            for (std::size_t j = 0; j < a.size(); ++j) x[j] = w * a[j] + (1.0 - w) * b[j];
        } else {
            LinearProgram lp = skeleton;
            LinearExpr direction;
            for (auto v : model.structural()) direction.push_back({v, normal(rng)});
            lp.set_objective(std::move(direction));
            const auto sol = solve_checked(lp, options, solves);
            if (sol.status == LPStatus::Infeasible)
                throw ValidationError("no metric satisfies the profile and setting constraints");
            if (!sol.optimal()) continue;
            x = sol.values;
            if (pool.size() < kPool) pool.push_back(x);
            else pool[rng() % kPool] = x;
        }
        best = std::max(best, distortion_given_metric(lottery, model.extract(x), objective));
    }
    return best;
}

}  // namespace mdist
