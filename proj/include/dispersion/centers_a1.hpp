#pragma once

#include <string>

#include "dispersion/geometry.hpp"

namespace dispersion {

/// Returns the ball centers; min_distance is the minimum center distance.
Solution solve_centers(const BallInstance& inst);

enum class A1Case { kCenters, kMatching };

const char* to_string(A1Case c);

struct A1Outcome {
    Solution solution;
    A1Case case_tag = A1Case::kCenters;
    /// Distance-graph threshold; NaN when n = 1.
    double sigma = 0.0;
    double delta = kInf;
    /// Lower bound on solution.min_distance promised for the returned case.
    double guaranteed_value = kInf;
    /// Set when the sigma-close pairs were not mutual nearest neighbours and
    /// the run fell back to the centers.
    bool matching_fallback = false;
};

/// Perturbation algorithm for unit disks (balls in any dimension).
///
/// If some ball has its second-nearest center within sigma(delta) the centers
/// are returned. Otherwise each sigma-close pair is a mutual nearest pair and
/// both points move (sigma - delta)/4 apart along their center line.
/// Throws ValidationError for non-unit radii or coincident centers.
A1Outcome solve_a1(const BallInstance& inst);

}  // namespace dispersion
