#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dispersion/a2.hpp"
#include "dispersion/geometry.hpp"

namespace dispersion {

/// Concentric balls of radius mu, mu in [0, 1]. Requires unit input.
BallInstance shrink_instance(const BallInstance& inst, double mu);

struct HybridCandidate {
    std::string algorithm;  // "centers", "a1", "a2"
    std::optional<Solution> solution;
    std::string skip_reason;  // set when solution is empty
};

struct HybridOutcome {
    Solution solution;
    std::string winner;
    std::vector<HybridCandidate> candidates;
    double delta = 0.0;
    double mu = 0.0;
    /// Worst-case ratio this portfolio certifies for the instance (0 when none).
    double guaranteed_ratio = 0.0;
    std::string guarantee;
};

/// Portfolio for unit disks (overlap allowed): CENTERS, A1, and A2 on the
/// instance shrunk to radius mu = min(delta/2, 1). Returns the candidate with
/// the largest recomputed min distance, ties in the order centers < a1 < a2.
HybridOutcome solve_hybrid(const BallInstance& inst, double epsilon = kDefaultEpsilon);

}  // namespace dispersion
