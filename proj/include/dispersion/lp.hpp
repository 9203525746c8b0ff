#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace dispersion::lp {

enum class Relation { kLessEqual, kGreaterEqual };

struct Term {
    std::size_t var;
    double coeff;
};

struct Constraint {
    std::vector<Term> terms;
    Relation relation;
    double rhs;
    std::string name;
};

struct Variable {
    std::string name;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

/// A maximization LP over real variables with <= / >= rows.
///
/// Rows are stored sparsely; a row may mention each variable at most once.
class LPModel {
public:
    std::size_t add_variable(std::string name,
                             double lower = -std::numeric_limits<double>::infinity(),
                             double upper = std::numeric_limits<double>::infinity());
    void add_constraint(std::vector<Term> terms, Relation relation, double rhs,
                        std::string name = {});

    /// Objective: maximize sum(coeff * var).
    void set_objective(std::vector<Term> terms);
    void maximize_variable(std::size_t var) { set_objective({{var, 1.0}}); }

    std::size_t num_variables() const noexcept { return vars_.size(); }
    std::size_t num_constraints() const noexcept { return rows_.size(); }
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    const std::vector<Constraint>& constraints() const noexcept { return rows_; }
    const std::vector<Term>& objective() const noexcept { return objective_; }

    /// Throws ValidationError on out-of-range indices, duplicates, NaN/inf coefficients
    /// or inverted bounds.
    void check_well_formed() const;

    double evaluate_objective(const std::vector<double>& x) const;
    /// Largest violation over rows and bounds (0 when feasible).
    double max_violation(const std::vector<double>& x) const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    std::vector<Term> objective_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNumericalFailure };

const char* to_string(Status s);

struct LPSolution {
    Status status = Status::kNumericalFailure;
    double objective = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> values;
    std::size_t iterations = 0;
    double max_violation = 0.0;
};

struct SolverOptions {
    /// Pivot and reduced-cost threshold inside the tableau.
    double pivot_tol = 1e-9;
    /// An optimal answer must satisfy every row and bound within this slack.
    double feasibility_tol = 1e-7;
    /// 0 selects 50 * (rows + columns) + 1000.
    std::size_t max_iterations = 0;
    /// Consecutive non-improving pivots before switching to Bland's rule.
    std::size_t degenerate_switch = 50;
};

class Solver {
public:
    virtual ~Solver() = default;
    virtual LPSolution solve(const LPModel& model) const = 0;
};

/// Dense two-phase tableau simplex. Dantzig pricing with lowest-index ties;
/// falls back to Bland's rule during degenerate stalls.
class DenseSimplex final : public Solver {
public:
    explicit DenseSimplex(SolverOptions options = {}) : options_(options) {}
    LPSolution solve(const LPModel& model) const override;

private:
    SolverOptions options_;
};

LPSolution solve_lp(const LPModel& model, const SolverOptions& options = {});

/// Writes the model in CPLEX LP text format.
void write_lp_format(const LPModel& model, std::ostream& os);

}  // namespace dispersion::lp
