#include "mdist/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace mdist {

std::size_t LinearProgram::add_variable(std::string name, bool free) {
    variables_.push_back({std::move(name), free});
    objective_.push_back(0.0);
    return variables_.size() - 1;
}

std::size_t LinearProgram::add_constraint(LinearExpr terms, Relation relation, double rhs) {
    constraints_.push_back({std::move(terms), relation, rhs});
    return constraints_.size() - 1;
}

void LinearProgram::set_objective(LinearExpr terms) {
    std::fill(objective_.begin(), objective_.end(), 0.0);
    for (const auto& t : terms) add_objective(t.var, t.coef);
}

void LinearProgram::add_objective(std::size_t var, double coef) {
    if (var >= objective_.size()) throw std::invalid_argument("objective references unknown variable");
    objective_[var] += coef;
}

void LinearProgram::validate() const {
    for (double c : objective_)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite objective coefficient");
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        const auto& con = constraints_[i];
        if (!std::isfinite(con.rhs))
            throw std::invalid_argument("constraint " + std::to_string(i) + " has non-finite rhs");
        for (const auto& t : con.terms) {
            if (t.var >= variables_.size())
                throw std::invalid_argument("constraint " + std::to_string(i) + " references unknown variable");
            if (!std::isfinite(t.coef))
                throw std::invalid_argument("constraint " + std::to_string(i) + " has non-finite coefficient");
        }
    }
}

const char* to_string(LPStatus status) {
    switch (status) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
        case LPStatus::SolverFailure: return "solver-failure";
    }
    return "unknown";
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

template <class Scalar>
struct Tolerances {
    Scalar feasibility;
    Scalar pivot;
    Scalar optimality;
};

template <class Scalar>
double to_double(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, double>) {
        return s;
    } else {
        return s.template convert_to<double>();
    }
}

template <class Scalar>
Scalar abs_of(const Scalar& s) {
    return s < Scalar(0) ? Scalar(-s) : s;
}

// Tableau over the standard form  A x = b, x >= 0, b >= 0.
template <class Scalar>
class Tableau {
public:
    Tableau(const LinearProgram& lp, Tolerances<Scalar> tol, std::size_t max_iter)
        : lp_(lp), tol_(tol), max_iter_(max_iter) {
        build();
    }

    LPSolution run() {
        LPSolution out;
        // Phase 1: minimise the sum of artificials.
        std::vector<Scalar> cost1(cols_, Scalar(0));
        for (std::size_t j = art_begin_; j < cols_; ++j) cost1[j] = Scalar(1);
        auto st = optimise(cost1);
        out.iterations = iterations_;
        if (st == LPStatus::SolverFailure) {
            out.status = st;
            return out;
        }
        Scalar infeas(0);
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] >= art_begin_) infeas += rhs(r);
        if (infeas > tol_.feasibility * rhs_scale_) {
            out.status = LPStatus::Infeasible;
            return out;
        }
        drive_out_artificials();

        // Phase 2: original objective in minimisation form.
        std::vector<Scalar> cost2(cols_, Scalar(0));
        const double sign = lp_.sense() == Sense::Maximize ? -1.0 : 1.0;
        for (std::size_t v = 0; v < lp_.num_variables(); ++v) {
            Scalar c = Scalar(sign * lp_.objective()[v]);
            cost2[pos_col_[v]] = c;
            if (neg_col_[v] != npos) cost2[neg_col_[v]] = -c;
        }
        st = optimise(cost2);
        out.iterations = iterations_;
        if (st != LPStatus::Optimal) {
            out.status = st;
            return out;
        }

        std::vector<Scalar> x(cols_, Scalar(0));
        for (std::size_t r = 0; r < rows_; ++r) x[basis_[r]] = rhs(r);
        out.values.resize(lp_.num_variables());
        double obj = 0.0;
        for (std::size_t v = 0; v < lp_.num_variables(); ++v) {
            Scalar val = x[pos_col_[v]];
            if (neg_col_[v] != npos) val -= x[neg_col_[v]];
            out.values[v] = to_double(val);
            obj += lp_.objective()[v] * out.values[v];
        }
        out.objective = obj;

        // y^T = c_B^T B^{-1}; the columns of B^{-1} sit where the initial basis was.
        out.duals.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Scalar y(0);
            const std::size_t col = init_col_[i];
            for (std::size_t r = 0; r < rows_; ++r) {
                const Scalar& cb = cost2[basis_[r]];
                if (cb != Scalar(0)) y += cb * at(r, col);
            }
            double yd = to_double(y) * row_sign_[i] * sign;
            out.duals[i] = yd;
        }
        if constexpr (!std::is_same_v<Scalar, double>) {
            // Report the exact objective rather than the re-summed double.
            Scalar exact(0);
            for (std::size_t v = 0; v < lp_.num_variables(); ++v) {
                Scalar val = x[pos_col_[v]];
                if (neg_col_[v] != npos) val -= x[neg_col_[v]];
                exact += Scalar(lp_.objective()[v]) * val;
            }
            out.objective = to_double(exact);
        }
        out.status = LPStatus::Optimal;
        return out;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * stride_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * stride_ + c]; }
    Scalar& rhs(std::size_t r) { return data_[r * stride_ + cols_]; }

    void build() {
        const auto& cons = lp_.constraints();
        rows_ = cons.size();
        std::size_t ncols = 0;
        pos_col_.assign(lp_.num_variables(), npos);
        neg_col_.assign(lp_.num_variables(), npos);
        for (std::size_t v = 0; v < lp_.num_variables(); ++v) {
            pos_col_[v] = ncols++;
            if (lp_.variables()[v].free) neg_col_[v] = ncols++;
        }
        struct_cols_ = ncols;
        row_sign_.assign(rows_, 1.0);
        std::vector<Relation> rel(rows_);
        std::size_t n_slack = 0, n_art = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            rel[i] = cons[i].relation;
            if (cons[i].rhs < 0) {
                row_sign_[i] = -1.0;
                if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
                else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
            }
            if (rel[i] != Relation::Equal) ++n_slack;
            if (rel[i] != Relation::LessEqual) ++n_art;
        }
        art_begin_ = struct_cols_ + n_slack;
        cols_ = art_begin_ + n_art;
        stride_ = cols_ + 1;
        data_.assign(rows_ * stride_, Scalar(0));
        basis_.assign(rows_, npos);
        init_col_.assign(rows_, npos);

        std::size_t slack = struct_cols_, art = art_begin_;
        double scale = 1.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            const double s = row_sign_[i];
            for (const auto& t : cons[i].terms) {
                at(i, pos_col_[t.var]) += Scalar(s * t.coef);
                if (neg_col_[t.var] != npos) at(i, neg_col_[t.var]) -= Scalar(s * t.coef);
            }
            rhs(i) = Scalar(s * cons[i].rhs);
            scale = std::max(scale, std::abs(cons[i].rhs));
            switch (rel[i]) {
                case Relation::LessEqual:
                    at(i, slack) = Scalar(1);
                    basis_[i] = init_col_[i] = slack++;
                    break;
                case Relation::GreaterEqual:
                    at(i, slack++) = Scalar(-1);
                    at(i, art) = Scalar(1);
                    basis_[i] = init_col_[i] = art++;
                    break;
                case Relation::Equal:
                    at(i, art) = Scalar(1);
                    basis_[i] = init_col_[i] = art++;
                    break;
            }
        }
        rhs_scale_ = Scalar(scale);
    }

    void pivot(std::size_t pr, std::size_t pc, std::vector<Scalar>& reduced) {
        const Scalar inv = Scalar(1) / at(pr, pc);
        Scalar* prow = &data_[pr * stride_];
        for (std::size_t c = 0; c <= cols_; ++c) prow[c] *= inv;
        prow[pc] = Scalar(1);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            Scalar* row = &data_[r * stride_];
            const Scalar f = row[pc];
            if (f == Scalar(0)) continue;
            for (std::size_t c = 0; c <= cols_; ++c) {
                if (prow[c] != Scalar(0)) row[c] -= f * prow[c];
            }
            row[pc] = Scalar(0);
            if constexpr (std::is_same_v<Scalar, double>) {
                if (std::abs(row[cols_]) < 1e-13) row[cols_] = 0.0;
            }
        }
        const Scalar f = reduced[pc];
        if (f != Scalar(0)) {
            for (std::size_t c = 0; c <= cols_; ++c)
                if (prow[c] != Scalar(0)) reduced[c] -= f * prow[c];
            reduced[pc] = Scalar(0);
        }
        basis_[pr] = pc;
    }

    // Bland's rule simplex on the current basis; artificial columns never enter.
    LPStatus optimise(const std::vector<Scalar>& cost) {
        std::vector<Scalar> reduced(cols_ + 1, Scalar(0));
        for (std::size_t c = 0; c < cols_; ++c) reduced[c] = cost[c];
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& cb = cost[basis_[r]];
            if (cb == Scalar(0)) continue;
            for (std::size_t c = 0; c <= cols_; ++c) reduced[c] -= cb * at(r, c);
        }
        while (true) {
            if (iterations_ >= max_iter_) return LPStatus::SolverFailure;
            std::size_t enter = npos;
            for (std::size_t c = 0; c < art_begin_; ++c) {
                if (reduced[c] < -tol_.optimality) {
                    enter = c;
                    break;
                }
            }
            if (enter == npos) return LPStatus::Optimal;

            std::size_t leave = npos;
            Scalar best(0);
            for (std::size_t r = 0; r < rows_; ++r) {
                const Scalar& a = at(r, enter);
                if (a <= tol_.pivot) continue;
                Scalar ratio = data_[r * stride_ + cols_] / a;
                if (leave == npos) {
                    leave = r;
                    best = ratio;
                    continue;
                }
                const Scalar slack = tol_.pivot * (Scalar(1) + abs_of(best));
                if (ratio < best - slack || (ratio <= best + slack && basis_[r] < basis_[leave])) {
                    if (ratio < best) best = ratio;
                    leave = r;
                }
            }
            if (leave == npos) return LPStatus::Unbounded;
            pivot(leave, enter, reduced);
            ++iterations_;
        }
    }

    void drive_out_artificials() {
        std::vector<Scalar> dummy(cols_ + 1, Scalar(0));
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < art_begin_) continue;
            std::size_t best = npos;
            for (std::size_t c = 0; c < art_begin_; ++c)
                if (abs_of(at(r, c)) > tol_.pivot && (best == npos || abs_of(at(r, c)) > abs_of(at(r, best))))
                    best = c;
            if (best != npos) {
                rhs(r) = Scalar(0);
                pivot(r, best, dummy);
            }
        }
    }

    const LinearProgram& lp_;
    Tolerances<Scalar> tol_;
    std::size_t max_iter_;
    std::size_t iterations_ = 0;
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0, struct_cols_ = 0, art_begin_ = 0;
    std::vector<Scalar> data_;
    std::vector<std::size_t> basis_, init_col_, pos_col_, neg_col_;
    std::vector<double> row_sign_;
    Scalar rhs_scale_ = Scalar(1);
};

}  // namespace

LPSolution solve_lp(const LinearProgram& program, const SolverOptions& options) {
    program.validate();
    Tableau<double> t(program, {options.feasibility_tol, options.pivot_tol, options.optimality_tol},
                      options.max_iterations);
    LPSolution sol = t.run();
    // Degenerate programs can drift in floating point; an uncertified optimum is redone exactly.
    if (sol.optimal() && !check_solution(program, sol).certified()) {
        LPSolution exact = solve_lp_exact(program);
        exact.iterations += sol.iterations;
        return exact;
    }
    return sol;
}

LPSolution solve_lp_exact(const LinearProgram& program) {
    program.validate();
    Tableau<Rational> t(program, {Rational(0), Rational(0), Rational(0)},
                        static_cast<std::size_t>(-1));
    return t.run();
}

std::string ViolationReport::summary() const {
    std::ostringstream os;
    if (violations.empty()) {
        os << "certified (max violation " << max_primal_violation << ", gap " << duality_gap << ")";
        return os.str();
    }
    for (const auto& v : violations) os << v.description << " [" << v.magnitude << "]\n";
    return os.str();
}

ViolationReport check_solution(const LinearProgram& program, const LPSolution& solution,
                               double tolerance) {
    ViolationReport report;
    auto add = [&](Violation::Kind kind, std::size_t index, double magnitude, std::string text) {
        report.violations.push_back({kind, index, magnitude, std::move(text)});
    };
    if (!solution.optimal()) {
        add(Violation::Kind::Status, 0, 0.0, std::string("status is ") + to_string(solution.status));
        return report;
    }
    const auto& vars = program.variables();
    const auto& cons = program.constraints();
    if (solution.values.size() != vars.size() || solution.duals.size() != cons.size()) {
        add(Violation::Kind::Status, 0, 0.0, "solution dimensions do not match the program");
        return report;
    }
    const bool maximise = program.sense() == Sense::Maximize;

    for (std::size_t j = 0; j < vars.size(); ++j) {
        if (!vars[j].free && solution.values[j] < -tolerance) {
            const double mag = -solution.values[j];
            report.max_primal_violation = std::max(report.max_primal_violation, mag);
            add(Violation::Kind::Bound, j, mag, "variable " + vars[j].name + " below zero");
        }
    }
    std::vector<double> aty(vars.size(), 0.0);
    double dual_obj = 0.0;
    for (std::size_t i = 0; i < cons.size(); ++i) {
        double lhs = 0.0;
        const double y = solution.duals[i];
        for (const auto& t : cons[i].terms) {
            lhs += t.coef * solution.values[t.var];
            aty[t.var] += t.coef * y;
        }
        dual_obj += cons[i].rhs * y;
        double viol = 0.0;
        switch (cons[i].relation) {
            case Relation::LessEqual: viol = lhs - cons[i].rhs; break;
            case Relation::GreaterEqual: viol = cons[i].rhs - lhs; break;
            case Relation::Equal: viol = std::abs(lhs - cons[i].rhs); break;
        }
        if (viol > 0) report.max_primal_violation = std::max(report.max_primal_violation, viol);
        if (viol > tolerance) {
            std::ostringstream os;
            os << "constraint " << i << " violated by " << viol;
            add(Violation::Kind::Constraint, i, viol, os.str());
        }
        // Sign convention: minimisation wants y <= 0 on <= rows and y >= 0 on >= rows.
        double wrong = 0.0;
        if (cons[i].relation == Relation::LessEqual) wrong = maximise ? -y : y;
        if (cons[i].relation == Relation::GreaterEqual) wrong = maximise ? y : -y;
        if (wrong > tolerance) {
            std::ostringstream os;
            os << "dual of constraint " << i << " has wrong sign (" << y << ")";
            add(Violation::Kind::DualSign, i, wrong, os.str());
        }
    }
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const double rc = program.objective()[j] - aty[j];
        double wrong = vars[j].free ? std::abs(rc) : (maximise ? rc : -rc);
        if (wrong > tolerance) {
            std::ostringstream os;
            os << "reduced cost of " << vars[j].name << " infeasible (" << rc << ")";
            add(Violation::Kind::ReducedCost, j, wrong, os.str());
        }
    }
    double primal_obj = 0.0;
    for (std::size_t j = 0; j < vars.size(); ++j)
        primal_obj += program.objective()[j] * solution.values[j];
    const double scale = 1.0 + std::abs(solution.objective);
    report.duality_gap = std::abs(solution.objective - dual_obj);
    if (report.duality_gap > tolerance * scale) {
        std::ostringstream os;
        os << "duality gap " << report.duality_gap << " (primal " << solution.objective << ", dual "
           << dual_obj << ")";
        add(Violation::Kind::DualityGap, 0, report.duality_gap, os.str());
    }
    const double mismatch = std::abs(primal_obj - solution.objective);
    if (mismatch > tolerance * scale) {
        std::ostringstream os;
        os << "reported objective differs from c^T x by " << mismatch;
        add(Violation::Kind::DualityGap, 0, mismatch, os.str());
    }
    return report;
}

void LpAudit::record(const LinearProgram& program, const LPSolution& solution) {
    ++solves;
    if (solution.status == LPStatus::SolverFailure) ++failures;
    if (!solution.optimal()) return;
    ++optimal;
    if (check_solution(program, solution).certified()) ++certified;
}

LPSolution solve_audited(const LinearProgram& program, LpAudit* audit, const SolverOptions& options) {
    LPSolution sol = solve_lp(program, options);
    if (audit) audit->record(program, sol);
    return sol;
}

}  // namespace mdist
