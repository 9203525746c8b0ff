#include "dispersion/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "dispersion/error.hpp"

namespace dispersion::lp {

std::size_t LPModel::add_variable(std::string name, double lower, double upper) {
    if (name.empty()) name = "x" + std::to_string(vars_.size());
    vars_.push_back({std::move(name), lower, upper});
    return vars_.size() - 1;
}

void LPModel::add_constraint(std::vector<Term> terms, Relation relation, double rhs,
                             std::string name) {
    if (name.empty()) name = "c" + std::to_string(rows_.size());
    rows_.push_back({std::move(terms), relation, rhs, std::move(name)});
}

void LPModel::set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }

namespace {

void check_terms(const std::vector<Term>& terms, std::size_t n, const std::string& where) {
    std::unordered_set<std::size_t> seen;
    for (const Term& t : terms) {
        if (t.var >= n) throw ValidationError(where + ": variable index out of range");
        if (!std::isfinite(t.coeff)) throw ValidationError(where + ": non-finite coefficient");
        if (!seen.insert(t.var).second) throw ValidationError(where + ": duplicate variable");
    }
}

double dot(const std::vector<Term>& terms, const std::vector<double>& x) {
    double s = 0.0;
    for (const Term& t : terms) s += t.coeff * x[t.var];
    return s;
}

}  // namespace

void LPModel::check_well_formed() const {
    for (const Variable& v : vars_) {
        if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper ||
            v.lower == std::numeric_limits<double>::infinity() ||
            v.upper == -std::numeric_limits<double>::infinity()) {
            throw ValidationError("variable " + v.name + " has invalid bounds");
        }
    }
    check_terms(objective_, vars_.size(), "objective");
    for (const Constraint& row : rows_) {
        check_terms(row.terms, vars_.size(), "row " + row.name);
        if (!std::isfinite(row.rhs)) throw ValidationError("row " + row.name + ": non-finite rhs");
    }
}

double LPModel::evaluate_objective(const std::vector<double>& x) const { return dot(objective_, x); }

double LPModel::max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
        worst = std::max({worst, vars_[j].lower - x[j], x[j] - vars_[j].upper});
    }
    for (const Constraint& row : rows_) {
        const double lhs = dot(row.terms, x);
        worst = std::max(worst, row.relation == Relation::kLessEqual ? lhs - row.rhs : row.rhs - lhs);
    }
    return worst;
}

const char* to_string(Status s) {
    switch (s) {
        case Status::kOptimal: return "optimal";
        case Status::kInfeasible: return "infeasible";
        case Status::kUnbounded: return "unbounded";
        case Status::kIterationLimit: return "iteration_limit";
        case Status::kNumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

// Each model variable becomes offset + sign * y_plus (- y_minus when free),
// with all y >= 0.
struct ColumnMap {
    std::size_t plus;
    std::size_t minus;  // npos unless the variable is free
    double offset;
    double sign;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

class IterationLimit {};

// Tableau for: maximize c'y  s.t.  A y <= b, y >= 0.
// Layout follows the classic "N/B index" formulation: row m is the objective,
// row m+1 the phase-one objective, column n the artificial variable and
// column n+1 the right-hand side.
class Tableau {
public:
    Tableau(std::size_t m, std::size_t n, const SolverOptions& opt)
        : m_(m), n_(n), stride_(n + 2), opt_(opt), d_((m + 2) * (n + 2), 0.0), basic_(m),
          nonbasic_(n + 1) {
        limit_ = opt.max_iterations ? opt.max_iterations : 50 * (m + n) + 1000;
        for (std::size_t i = 0; i < m_; ++i) {
            basic_[i] = static_cast<long>(n_ + i);
            at(i, n_) = -1.0;
        }
        for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = static_cast<long>(j);
        nonbasic_[n_] = -1;
        at(m_ + 1, n_) = 1.0;
    }

    double& at(std::size_t i, std::size_t j) { return d_[i * stride_ + j]; }
    double at(std::size_t i, std::size_t j) const { return d_[i * stride_ + j]; }

    void set_row(std::size_t i, std::size_t j, double v) { at(i, j) = v; }
    void set_rhs(std::size_t i, double v) { at(i, n_ + 1) = v; }
    void set_cost(std::size_t j, double v) { at(m_, j) = -v; }

    // Returns the optimal objective; throws IterationLimit. Sets status.
    Status solve(std::vector<double>& y) {
        const double eps = opt_.pivot_tol;
        if (m_ > 0) {
            std::size_t r = 0;
            for (std::size_t i = 1; i < m_; ++i) {
                if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
            }
            if (at(r, n_ + 1) < -eps) {
                pivot(r, n_);
                if (!run(2) || at(m_ + 1, n_ + 1) < -eps) return Status::kInfeasible;
                for (std::size_t i = 0; i < m_; ++i) {
                    if (basic_[i] != -1) continue;
                    std::size_t s = 0;
                    for (std::size_t j = 1; j <= n_; ++j) {
                        if (less(at(i, j), nonbasic_[j], at(i, s), nonbasic_[s])) s = j;
                    }
                    pivot(i, s);
                }
            }
        }
        const bool bounded = run(1);
        y.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) {
                y[static_cast<std::size_t>(basic_[i])] = at(i, n_ + 1);
            }
        }
        return bounded ? Status::kOptimal : Status::kUnbounded;
    }

    std::size_t iterations() const { return iterations_; }

private:
    static bool less(double a, long ia, double b, long ib) {
        return a < b || (a == b && ia < ib);
    }

    void pivot(std::size_t r, std::size_t s) {
        if (++iterations_ > limit_) throw IterationLimit{};
        double* a = &d_[r * stride_];
        const double inv = 1.0 / a[s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            double* b = &d_[i * stride_];
            if (std::abs(b[s]) <= opt_.pivot_tol) continue;
            const double inv2 = b[s] * inv;
            for (std::size_t j = 0; j < stride_; ++j) b[j] -= a[j] * inv2;
            b[s] = a[s] * inv2;
        }
        for (std::size_t j = 0; j < stride_; ++j) {
            if (j != s) a[j] *= inv;
        }
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i != r) d_[i * stride_ + s] *= -inv;
        }
        a[s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    // phase 1 optimizes the real objective (row m), phase 2 the artificial one.
    bool run(int phase) {
        const double eps = opt_.pivot_tol;
        const std::size_t x = m_ + static_cast<std::size_t>(phase) - 1;
        std::size_t stalled = 0;
        for (;;) {
            const bool bland = stalled >= opt_.degenerate_switch;
            std::size_t s = npos;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (nonbasic_[j] == -phase) continue;
                if (bland) {
                    if (at(x, j) < -eps && (s == npos || nonbasic_[j] < nonbasic_[s])) s = j;
                } else if (s == npos || less(at(x, j), nonbasic_[j], at(x, s), nonbasic_[s])) {
                    s = j;
                }
            }
            if (s == npos || at(x, s) >= -eps) return true;
            std::size_t r = npos;
            for (std::size_t i = 0; i < m_; ++i) {
                if (at(i, s) <= eps) continue;
                if (r == npos) {
                    r = i;
                    continue;
                }
                const double ri = at(i, n_ + 1) / at(i, s);
                const double rr = at(r, n_ + 1) / at(r, s);
                if (less(ri, basic_[i], rr, basic_[r])) r = i;
            }
            if (r == npos) return false;
            const double before = at(x, n_ + 1);
            pivot(r, s);
            if (at(x, n_ + 1) > before + eps) {
                stalled = 0;
            } else {
                ++stalled;
            }
        }
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t stride_;
    SolverOptions opt_;
    std::vector<double> d_;
    std::vector<long> basic_;
    std::vector<long> nonbasic_;
    std::size_t iterations_ = 0;
    std::size_t limit_ = 0;
};

}  // namespace

LPSolution DenseSimplex::solve(const LPModel& model) const {
    model.check_well_formed();
    const auto& vars = model.variables();
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<ColumnMap> cols(vars.size());
    std::size_t ncols = 0;
    struct BoundRow {
        std::size_t col;
        double rhs;
    };
    std::vector<BoundRow> bound_rows;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const Variable& v = vars[j];
        if (v.lower > -inf) {
            cols[j] = {ncols++, npos, v.lower, 1.0};
            if (v.upper < inf) bound_rows.push_back({cols[j].plus, v.upper - v.lower});
        } else if (v.upper < inf) {
            cols[j] = {ncols++, npos, v.upper, -1.0};
        } else {
            cols[j] = {ncols, ncols + 1, 0.0, 1.0};
            ncols += 2;
        }
    }

    const auto& rows = model.constraints();
    const std::size_t m = rows.size() + bound_rows.size();
    Tableau tab(m, ncols, options_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double flip = rows[i].relation == Relation::kLessEqual ? 1.0 : -1.0;
        double rhs = rows[i].rhs;
        for (const Term& t : rows[i].terms) {
            const ColumnMap& c = cols[t.var];
            rhs -= t.coeff * c.offset;
            tab.at(i, c.plus) += flip * t.coeff * c.sign;
            if (c.minus != npos) tab.at(i, c.minus) -= flip * t.coeff;
        }
        tab.set_rhs(i, flip * rhs);
    }
    for (std::size_t k = 0; k < bound_rows.size(); ++k) {
        tab.at(rows.size() + k, bound_rows[k].col) = 1.0;
        tab.set_rhs(rows.size() + k, bound_rows[k].rhs);
    }
    for (const Term& t : model.objective()) {
        const ColumnMap& c = cols[t.var];
        tab.set_cost(c.plus, t.coeff * c.sign);
        if (c.minus != npos) tab.set_cost(c.minus, -t.coeff);
    }

    LPSolution out;
    std::vector<double> y;
    try {
        out.status = tab.solve(y);
    } catch (const IterationLimit&) {
        out.status = Status::kIterationLimit;
        out.iterations = tab.iterations();
        return out;
    }
    out.iterations = tab.iterations();
    if (out.status != Status::kOptimal) return out;

    out.values.resize(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const ColumnMap& c = cols[j];
        double v = c.offset + c.sign * y[c.plus];
        if (c.minus != npos) v -= y[c.minus];
        out.values[j] = v;
    }
    out.objective = model.evaluate_objective(out.values);
    out.max_violation = model.max_violation(out.values);
    if (out.max_violation > options_.feasibility_tol) out.status = Status::kNumericalFailure;
    return out;
}

LPSolution solve_lp(const LPModel& model, const SolverOptions& options) {
    return DenseSimplex(options).solve(model);
}

namespace {

void write_terms(std::ostream& os, const std::vector<Term>& terms, const LPModel& model) {
    if (terms.empty()) {
        os << " 0";
        return;
    }
    bool first = true;
    for (const Term& t : terms) {
        const double a = std::abs(t.coeff);
        if (t.coeff < 0) {
            os << " - ";
        } else if (!first) {
            os << " + ";
        } else {
            os << " ";
        }
        if (a != 1.0) os << a << " ";
        os << model.variables()[t.var].name;
        first = false;
    }
}

}  // namespace

void write_lp_format(const LPModel& model, std::ostream& os) {
    const auto old_precision = os.precision(17);
    os << "\\ " << model.num_variables() << " variables, " << model.num_constraints()
       << " constraints\n";
    os << "Maximize\n obj:";
    write_terms(os, model.objective(), model);
    os << "\nSubject To\n";
    for (const Constraint& row : model.constraints()) {
        os << " " << row.name << ":";
        write_terms(os, row.terms, model);
        os << (row.relation == Relation::kLessEqual ? " <= " : " >= ") << row.rhs << "\n";
    }
    os << "Bounds\n";
    for (const Variable& v : model.variables()) {
        const bool has_lo = std::isfinite(v.lower);
        const bool has_hi = std::isfinite(v.upper);
        if (!has_lo && !has_hi) {
            os << " " << v.name << " free\n";
        } else if (has_lo && has_hi) {
            os << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
        } else if (has_lo) {
            os << " " << v.name << " >= " << v.lower << "\n";
        } else {
            os << " -inf <= " << v.name << " <= " << v.upper << "\n";
        }
    }
    os << "End\n";
    os.precision(old_precision);
}

}  // namespace dispersion::lp
