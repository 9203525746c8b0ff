#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dispersion/geometry.hpp"
#include "dispersion/lp.hpp"

namespace dispersion {

/// Inner shrink factor: the polytope must contain the ball of radius r/2.
inline constexpr double kInnerScale = 0.5;
/// Outer shrink factor: the polytope must fit in the ball of radius 3r/4.
inline constexpr double kOuterScale = 0.75;
inline constexpr double kDefaultEpsilon = 1e-4;

/// {q : <normal, q - center> <= offset}, normal of unit length.
struct Halfspace {
    Point normal;
    double offset = 0.0;
};

/// Convex polytope around a ball center, with radii measured from that center.
struct ContainerPolytope {
    Point center;
    double ball_radius = 0.0;
    std::vector<Halfspace> halfspaces;
    std::vector<Point> vertices;  // absolute coordinates
    double inradius = 0.0;
    double circumradius = 0.0;

    bool contains(const Point& q, double tol = 1e-7) const;
    /// inradius >= r/2 and circumradius <= 3r/4 (within kGeomTol).
    bool satisfies_sandwich() const;
};

/// Builds a polytope from relative halfspaces and certifies its radii by
/// enumerating vertices (d = 2 or 3).
ContainerPolytope make_polytope(const Ball& ball, std::vector<Halfspace> halfspaces);

/// d = 2: axis-aligned square of side r. d = 3: regular icosahedron with
/// inradius r/2. Throws ValidationError for other dimensions.
ContainerPolytope build_container_polytope(const Ball& ball, int dimension);

struct Lp3Model {
    lp::LPModel model;
    /// Variable of ball i, axis k is i * d + k and holds the displacement q_i - o_i.
    std::size_t z_var = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t containment_rows = 0;
    std::size_t projection_rows = 0;
};

/// Maximize z subject to q_i in Q_i and <a_ij, q_j - q_i> >= z for every pair
/// with center distance <= 7 delta, a_ij the unit vector from o_i to o_j.
Lp3Model build_lp3(const BallInstance& inst, const std::vector<ContainerPolytope>& polytopes);

struct A2Outcome {
    Solution solution;
    double z_star = 0.0;
    std::size_t included_pairs = 0;
    double epsilon = kDefaultEpsilon;
    std::size_t lp_iterations = 0;
};

/// Projection-LP algorithm for interior-disjoint balls in d = 2 or 3.
A2Outcome solve_a2(const BallInstance& inst, double epsilon = kDefaultEpsilon);

}  // namespace dispersion
