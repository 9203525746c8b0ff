#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dispersion/geometry.hpp"

namespace dispersion {

/// min over pairs of (d_ij + r_i + r_j). Requires disjoint balls and n >= 2.
double opt_upper_disjoint(const BallInstance& inst);

/// min(delta + 2, f(s2)) for unit disks, s2 the smallest second-nearest
/// center distance (the f term needs n >= 3).
double opt_upper_unit(const BallInstance& inst);

/// Exact optimum for two balls: |o1 o2| + r1 + r2.
double opt_two_balls(const Ball& a, const Ball& b);

struct OracleResult {
    /// Best min pairwise distance found on the grid (a lower bound on OPT).
    double best = 0.0;
    /// r_max * sqrt(d) / (k - 1).
    double grid_error = 0.0;
    std::uint64_t nodes = 0;
};

struct OracleOptions {
    std::uint64_t node_budget = 2'000'000'000ULL;
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Exhaustive branch-and-bound over per-ball grids of k points per axis
/// (boundary-inclusive, filtered to the ball). n <= 5; throws ValidationError
/// when the search exceeds the node budget.
OracleResult brute_force_opt(const BallInstance& inst, int k, const OracleOptions& options = {});

struct Certificate {
    double achieved = 0.0;
    double opt_upper = kInf;
    std::optional<double> opt_lower;
    double ratio_lower_bound = 1.0;
    std::string bound_provenance;
};

/// Combines the applicable upper bounds (pair bound, unit bounds) into a ratio
/// certificate. Throws ValidationError for an invalid solution.
Certificate certify(const Solution& sol, const BallInstance& inst,
                    std::optional<double> opt_lower = std::nullopt);

}  // namespace dispersion
