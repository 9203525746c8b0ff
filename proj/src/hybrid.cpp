#include "dispersion/hybrid.hpp"

#include <cmath>

#include "dispersion/centers_a1.hpp"
#include "dispersion/error.hpp"
#include "dispersion/ratio.hpp"

namespace dispersion {

BallInstance shrink_instance(const BallInstance& inst, double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("shrink factor mu must lie in [0, 1]");
    const ValidationReport unit = validate(inst, false, true);
    if (!unit.ok()) throw ValidationError("shrinking needs unit radii: " + unit.to_string());
    std::vector<Ball> balls;
    balls.reserve(inst.size());
    for (const Ball& b : inst.balls()) balls.push_back({b.center, mu});
    return BallInstance(inst.dimension(), std::move(balls));
}

HybridOutcome solve_hybrid(const BallInstance& inst, double epsilon) {
    const ValidationReport unit = validate(inst, false, true);
    if (!unit.ok()) throw ValidationError("hybrid needs unit radii: " + unit.to_string());

    HybridOutcome out;
    out.delta = inst.size() >= 2 ? min_center_distance(inst) : kInf;
    out.mu = std::min(out.delta / 2.0, 1.0);

    out.candidates.push_back({"centers", solve_centers(inst), {}});

    HybridCandidate a1{"a1", std::nullopt, {}};
    if (inst.size() >= 2 && !(out.delta > 0.0)) {
        a1.skip_reason = "coincident centers (delta = 0)";
    } else {
        try {
            a1.solution = solve_a1(inst).solution;
        } catch (const Error& e) {
            a1.skip_reason = e.what();
        }
    }
    out.candidates.push_back(std::move(a1));

    HybridCandidate a2{"a2", std::nullopt, {}};
    if (inst.size() < 2) {
        a2.skip_reason = "fewer than two balls";
    } else if (!(out.mu > 0.0)) {
        a2.skip_reason = "shrink radius mu = 0";
    } else {
        try {
            a2.solution = solve_a2(shrink_instance(inst, out.mu), epsilon).solution;
        } catch (const Error& e) {
            a2.skip_reason = e.what();
        }
    }
    out.candidates.push_back(std::move(a2));

    const HybridCandidate* best = nullptr;
    for (const HybridCandidate& cand : out.candidates) {
        if (!cand.solution) continue;
        if (!best || cand.solution->min_distance > best->solution->min_distance) best = &cand;
    }
    // centers never skips, so best is set.
    out.winner = best->algorithm;
    out.solution = *best->solution;
    out.solution.algorithm = "hybrid:" + best->algorithm;

    if (inst.size() < 2) {
        out.guaranteed_ratio = 1.0;
        out.guarantee = "single ball";
    } else if (out.delta > 0.0) {
        out.guaranteed_ratio = ratio::c(out.delta);
        out.guarantee = "perturbation ratio c(delta)";
    } else {
        out.guaranteed_ratio = 0.0;
        out.guarantee = "no guarantee (delta = 0)";
    }
    return out;
}

}  // namespace dispersion
