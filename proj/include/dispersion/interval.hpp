#pragma once

#include <optional>
#include <vector>

namespace dispersion::interval {

struct Interval {
    double lo;
    double hi;
};

/// Sorted interior-disjoint intervals; `length` is set for a closed curve.
struct IntervalInstance {
    std::vector<Interval> intervals;
    std::optional<double> length;
};

struct IntervalSolution {
    double z_star = 0.0;
    std::vector<double> points;
};

/// Throws ValidationError unless a_i <= b_i, b_i <= a_{i+1}, n >= 2 and, for
/// cyclic instances, L > 0 with 0 <= a_1 and b_n <= L.
void validate(const IntervalInstance& inst, bool cyclic);

/// Exact optimum on the line via the LP with n point variables plus z.
IntervalSolution solve_line(const IntervalInstance& inst);

/// Exact optimum on a closed curve of length L (adds the wraparound gap).
IntervalSolution solve_cycle(const IntervalInstance& inst);

}  // namespace dispersion::interval
