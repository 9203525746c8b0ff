#include "dispersion/interval.hpp"

#include <cmath>
#include <string>

#include "dispersion/error.hpp"
#include "dispersion/lp.hpp"

namespace dispersion::interval {

void validate(const IntervalInstance& inst, bool cyclic) {
    const auto& iv = inst.intervals;
    if (iv.size() < 2) throw ValidationError("interval dispersion needs at least two intervals");
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (!std::isfinite(iv[i].lo) || !std::isfinite(iv[i].hi) || iv[i].lo > iv[i].hi) {
            throw ValidationError("interval " + std::to_string(i) + " must satisfy a <= b");
        }
        if (i + 1 < iv.size() && iv[i].hi > iv[i + 1].lo) {
            throw ValidationError("intervals " + std::to_string(i) + " and " +
                                  std::to_string(i + 1) + " are unsorted or overlap");
        }
    }
    if (cyclic) {
        if (!inst.length || !(*inst.length > 0.0) || !std::isfinite(*inst.length)) {
            throw ValidationError("a closed curve needs a length L > 0");
        }
        if (iv.front().lo < 0.0 || iv.back().hi > *inst.length) {
            throw ValidationError("intervals must lie in [0, L] on a closed curve");
        }
    }
}

namespace {

IntervalSolution solve(const IntervalInstance& inst, bool cyclic) {
    validate(inst, cyclic);
    const auto& iv = inst.intervals;
    const std::size_t n = iv.size();

    lp::LPModel model;
    for (std::size_t i = 0; i < n; ++i) model.add_variable("x" + std::to_string(i + 1));
    const std::size_t z = model.add_variable("z");
    model.maximize_variable(z);
    for (std::size_t i = 0; i < n; ++i) {
        model.add_constraint({{i, 1.0}}, lp::Relation::kGreaterEqual, iv[i].lo);
        model.add_constraint({{i, 1.0}}, lp::Relation::kLessEqual, iv[i].hi);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        model.add_constraint({{i + 1, 1.0}, {i, -1.0}, {z, -1.0}}, lp::Relation::kGreaterEqual, 0.0);
    }
    if (cyclic) {
        model.add_constraint({{0, 1.0}, {n - 1, -1.0}, {z, -1.0}}, lp::Relation::kGreaterEqual,
                             -*inst.length);
    }

    const lp::LPSolution sol = lp::solve_lp(model);
    if (sol.status != lp::Status::kOptimal) {
        throw SolverError(std::string("interval LP did not solve: ") + lp::to_string(sol.status));
    }
    IntervalSolution out;
    out.z_star = sol.values[z];
    out.points.assign(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(n));
    // Snap round-off back into the intervals.
    for (std::size_t i = 0; i < n; ++i) {
        out.points[i] = std::min(std::max(out.points[i], iv[i].lo), iv[i].hi);
    }
    return out;
}

}  // namespace

IntervalSolution solve_line(const IntervalInstance& inst) { return solve(inst, false); }

IntervalSolution solve_cycle(const IntervalInstance& inst) { return solve(inst, true); }

}  // namespace dispersion::interval
