#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dispersion {

using Point = std::vector<double>;

/// Absolute tolerance for containment, disjointness and unit-radius checks.
inline constexpr double kGeomTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ball {
    Point center;
    double radius = 0.0;
};

/// A dispersion instance: n balls in R^d.
///
/// Construction checks only structural consistency (dimension agreement,
/// non-negative finite radii). Disjointness and unit radii are properties
/// queried through is_disjoint(), is_unit() or validate().
class BallInstance {
public:
    BallInstance(int dimension, std::vector<Ball> balls);

    int dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return balls_.size(); }
    const std::vector<Ball>& balls() const noexcept { return balls_; }
    const Ball& operator[](std::size_t i) const { return balls_[i]; }

private:
    int dimension_;
    std::vector<Ball> balls_;
};

/// True when every radius equals 1 within kGeomTol.
bool is_unit(const BallInstance& inst);

/// True when |o_i o_j| >= r_i + r_j - kGeomTol for all pairs (interior-disjoint).
bool is_disjoint(const BallInstance& inst);

/// Pairs violating interior-disjointness, lowest indices first.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const BallInstance& inst,
                                                                   std::size_t limit = 16);

/// One point per ball plus the recomputed minimum pairwise distance.
struct Solution {
    std::vector<Point> points;
    double min_distance = kInf;
    std::string algorithm;
};

struct Neighbor {
    std::optional<std::size_t> index;
    double distance = kInf;
};

/// First and second nearest neighbour of every ball by center distance.
struct NeighborInfo {
    std::vector<Neighbor> nearest;
    std::vector<Neighbor> second;
};

double distance(std::span<const double> p, std::span<const double> q);
double squared_distance(std::span<const double> p, std::span<const double> q);

/// Signed length of the projection of segment p->q onto a unit direction.
double scalar_projection(std::span<const double> direction, std::span<const double> p,
                         std::span<const double> q);

/// Minimum over pairs of center distances. Throws ValidationError for n < 2.
double min_center_distance(const BallInstance& inst);

/// Minimum pairwise distance of a point set; +inf for fewer than two points.
double min_pairwise_distance(const std::vector<Point>& points);

/// Index pair achieving min_pairwise_distance (lowest indices on ties).
std::optional<std::pair<std::size_t, std::size_t>> closest_pair(const std::vector<Point>& points);

enum class NeighborMethod { kScan, kGrid, kAuto };

/// Nearest and second-nearest neighbour for each ball, ties to the lowest index.
/// kScan is the O(n^2) reference; kGrid uses a uniform bucket grid and returns
/// identical results. kAuto picks the grid for large n.
NeighborInfo neighbor_info(const BallInstance& inst, NeighborMethod method = NeighborMethod::kAuto);

/// All pairs (i < j) whose center distance is <= radius, sorted lexicographically.
std::vector<std::pair<std::size_t, std::size_t>> pairs_within(
    const BallInstance& inst, double radius, NeighborMethod method = NeighborMethod::kAuto);

struct Violation {
    std::string rule;
    std::vector<std::size_t> indices;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const BallInstance& inst, bool require_disjoint, bool require_unit);

/// Recomputes min_distance and checks every point lies in its ball within tol.
ValidationReport validate_solution(const BallInstance& inst, const Solution& sol);

/// Builds a Solution from points, recomputing the minimum distance.
Solution make_solution(std::vector<Point> points, std::string algorithm);

}  // namespace dispersion
