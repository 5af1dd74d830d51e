#pragma once

// Dense two-phase simplex solver with primal-dual certificates.
//
// Problems handled here are tiny (a few hundred rows at most), so the solver
// keeps a full tableau and pivots with Bland's lowest-index rule, which
// guarantees termination on degenerate programs.

#include <atomic>
#include <cstddef>
#include <string>
#include <vector>

namespace mdist {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
    std::size_t var;
    double coef;
};

using LinearExpr = std::vector<Term>;

class LinearProgram {
public:
    struct Variable {
        std::string name;
        bool free = false;  // otherwise bounded below by 0
    };

    struct Constraint {
        LinearExpr terms;
        Relation relation;
        double rhs;
    };

    std::size_t add_variable(std::string name, bool free = false);
    std::size_t add_constraint(LinearExpr terms, Relation relation, double rhs);

    void set_sense(Sense sense) { sense_ = sense; }
    void set_objective(LinearExpr terms);
    void add_objective(std::size_t var, double coef);

    Sense sense() const { return sense_; }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<double>& objective() const { return objective_; }
    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }

    /// Throws std::invalid_argument on unknown variables or non-finite data.
    void validate() const;

private:
    Sense sense_ = Sense::Minimize;
    std::vector<Variable> variables_;
    std::vector<double> objective_;
    std::vector<Constraint> constraints_;
};

enum class LPStatus { Optimal, Infeasible, Unbounded, SolverFailure };

const char* to_string(LPStatus status);

struct LPSolution {
    LPStatus status = LPStatus::SolverFailure;
    std::vector<double> values;   // per variable, iff optimal
    double objective = 0.0;       // iff optimal
    std::vector<double> duals;    // per constraint, iff optimal; b^T y = objective
    std::size_t iterations = 0;

    bool optimal() const { return status == LPStatus::Optimal; }
};

struct SolverOptions {
    double feasibility_tol = 1e-8;
    double pivot_tol = 1e-10;
    double optimality_tol = 1e-9;
    std::size_t max_iterations = 200000;
};

/// Floating-point two-phase simplex. An optimum that fails check_solution is
/// recomputed with solve_lp_exact, so every Optimal result is certified.
LPSolution solve_lp(const LinearProgram& program, const SolverOptions& options = {});

/// Same algorithm over exact rationals. Coefficients are converted exactly
/// from their binary representation; all tolerances are zero.
LPSolution solve_lp_exact(const LinearProgram& program);

struct Violation {
    enum class Kind { Constraint, Bound, DualSign, ReducedCost, DualityGap, Status };
    Kind kind;
    std::size_t index;  // constraint or variable index, 0 for gap/status
    double magnitude;
    std::string description;
};

struct ViolationReport {
    std::vector<Violation> violations;
    double max_primal_violation = 0.0;
    double duality_gap = 0.0;

    bool certified() const { return violations.empty(); }
    std::string summary() const;
};

/// Checks primal feasibility, dual feasibility and the duality gap of a
/// solution claiming optimality. Empty report iff the solution is certified.
ViolationReport check_solution(const LinearProgram& program, const LPSolution& solution,
                               double tolerance = 1e-8);

// Tallies certification results across many solves; safe to share between threads.
struct LpAudit {
    std::atomic<long> solves{0};
    std::atomic<long> optimal{0};
    std::atomic<long> certified{0};
    std::atomic<long> failures{0};

    void record(const LinearProgram& program, const LPSolution& solution);
    bool clean() const { return optimal.load() == certified.load() && failures.load() == 0; }
};

/// solve_lp followed by check_solution bookkeeping when an audit is attached.
LPSolution solve_audited(const LinearProgram& program, LpAudit* audit,
                         const SolverOptions& options = {});

}  // namespace mdist
