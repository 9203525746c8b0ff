#include "dispersion/centers_a1.hpp"

#include <cmath>
#include <limits>

#include "dispersion/error.hpp"
#include "dispersion/ratio.hpp"

namespace dispersion {

Solution solve_centers(const BallInstance& inst) {
    std::vector<Point> points;
    points.reserve(inst.size());
    for (const Ball& b : inst.balls()) points.push_back(b.center);
    return make_solution(std::move(points), "centers");
}

const char* to_string(A1Case c) {
    return c == A1Case::kCenters ? "CENTERS_CASE" : "MATCHING_CASE";
}

A1Outcome solve_a1(const BallInstance& inst) {
    const ValidationReport unit = validate(inst, false, true);
    if (!unit.ok()) throw ValidationError("a1 needs unit radii: " + unit.to_string());

    A1Outcome out;
    if (inst.size() == 1) {
        out.solution = solve_centers(inst);
        out.solution.algorithm = "a1";
        out.sigma = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    const NeighborInfo nb = neighbor_info(inst);
    double delta = kInf;
    for (const Neighbor& first : nb.nearest) delta = std::min(delta, first.distance);
    if (!(delta > 0.0)) throw ValidationError("a1 needs distinct centers (delta > 0)");
    out.delta = delta;
    out.sigma = ratio::solve_sigma(delta);

    auto centers_case = [&]() {
        out.solution = solve_centers(inst);
        out.solution.algorithm = "a1";
        out.case_tag = A1Case::kCenters;
        out.guaranteed_value = delta;
        return out;
    };

    for (const Neighbor& second : nb.second) {
        if (second.distance <= out.sigma) return centers_case();
    }

    const double shift = (out.sigma - delta) / 4.0;
    std::vector<Point> points;
    points.reserve(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const Neighbor& first = nb.nearest[i];
        Point p = inst[i].center;
        if (first.distance <= out.sigma) {
            const std::size_t j = *first.index;
            if (nb.nearest[j].index != i) {
                out.matching_fallback = true;
                return centers_case();
            }
            const Point& partner = inst[j].center;
            for (std::size_t k = 0; k < p.size(); ++k) {
                p[k] += shift * (inst[i].center[k] - partner[k]) / first.distance;
            }
        }
        points.push_back(std::move(p));
    }
    out.solution = make_solution(std::move(points), "a1");
    out.case_tag = A1Case::kMatching;
    out.guaranteed_value = (out.sigma + delta) / 2.0;
    return out;
}

}  // namespace dispersion
