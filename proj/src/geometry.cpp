#include "dispersion/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "dispersion/error.hpp"

namespace dispersion {

BallInstance::BallInstance(int dimension, std::vector<Ball> balls)
    : dimension_(dimension), balls_(std::move(balls)) {
    if (dimension_ < 1) {
        throw ValidationError("dimension must be >= 1, got " + std::to_string(dimension_));
    }
    if (balls_.empty()) {
        throw ValidationError("an instance needs at least one ball");
    }
    for (std::size_t i = 0; i < balls_.size(); ++i) {
        const Ball& b = balls_[i];
        if (b.center.size() != static_cast<std::size_t>(dimension_)) {
            throw ValidationError("ball " + std::to_string(i) + " has dimension " +
                                  std::to_string(b.center.size()) + ", expected " +
                                  std::to_string(dimension_));
        }
        if (!std::isfinite(b.radius) || b.radius < 0.0) {
            throw ValidationError("ball " + std::to_string(i) + " has invalid radius");
        }
        for (double c : b.center) {
            if (!std::isfinite(c)) {
                throw ValidationError("ball " + std::to_string(i) + " has a non-finite coordinate");
            }
        }
    }
}

double squared_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw ValidationError("dimension mismatch: " + std::to_string(p.size()) + " vs " +
                              std::to_string(q.size()));
    }
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double diff = p[k] - q[k];
        s += diff * diff;
    }
    return s;
}

double distance(std::span<const double> p, std::span<const double> q) {
    return std::sqrt(squared_distance(p, q));
}

double scalar_projection(std::span<const double> direction, std::span<const double> p,
                         std::span<const double> q) {
    if (direction.size() != p.size() || p.size() != q.size()) {
        throw ValidationError("dimension mismatch in scalar_projection");
    }
    double norm2 = 0.0;
    double dot = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        norm2 += direction[k] * direction[k];
        dot += direction[k] * (q[k] - p[k]);
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > kGeomTol) {
        throw ValidationError("scalar_projection needs a unit direction");
    }
    return dot;
}

bool is_unit(const BallInstance& inst) {
    return std::all_of(inst.balls().begin(), inst.balls().end(),
                       [](const Ball& b) { return std::abs(b.radius - 1.0) <= kGeomTol; });
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const BallInstance& inst,
                                                                   std::size_t limit) {
    // Sweep along the first axis: a ball can only overlap balls whose extents
    // on that axis intersect its own.
    const auto& balls = inst.balls();
    std::vector<std::size_t> order(balls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto lo = [&](std::size_t i) { return balls[i].center[0] - balls[i].radius; };
    auto hi = [&](std::size_t i) { return balls[i].center[0] + balls[i].radius; };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lo(a) < lo(b); });

    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < order.size(); ++a) {
        const std::size_t i = order[a];
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const std::size_t j = order[b];
            if (lo(j) > hi(i) + kGeomTol) break;
            const double d = distance(balls[i].center, balls[j].center);
            if (d < balls[i].radius + balls[j].radius - kGeomTol) {
                out.emplace_back(std::min(i, j), std::max(i, j));
            }
        }
    }
    std::sort(out.begin(), out.end());
    if (out.size() > limit) out.resize(limit);
    return out;
}

bool is_disjoint(const BallInstance& inst) { return overlapping_pairs(inst, 1).empty(); }

double min_pairwise_distance(const std::vector<Point>& points) {
    const auto cp = closest_pair(points);
    if (!cp) return kInf;
    return distance(points[cp->first], points[cp->second]);
}

namespace {

// Uniform bucket grid over the centers, sized for about one center per cell.
// Only built for dimensions 1..3.
class CenterGrid {
public:
    static constexpr int kMaxDim = 3;

    explicit CenterGrid(const BallInstance& inst) : dim_(inst.dimension()) {
        const auto& balls = inst.balls();
        lo_.fill(0.0);
        std::array<double, kMaxDim> hi{};
        for (int k = 0; k < dim_; ++k) {
            lo_[k] = kInf;
            hi[k] = -kInf;
        }
        for (const Ball& b : balls) {
            for (int k = 0; k < dim_; ++k) {
                lo_[k] = std::min(lo_[k], b.center[k]);
                hi[k] = std::max(hi[k], b.center[k]);
            }
        }
        double extent = 0.0;
        for (int k = 0; k < dim_; ++k) extent = std::max(extent, hi[k] - lo_[k]);
        const double n = static_cast<double>(balls.size());
        cell_ = extent > 0.0 ? extent / std::max(1.0, std::pow(n, 1.0 / dim_)) : 1.0;
        // Grow the cell until the total cell count is O(n).
        for (;;) {
            std::size_t total = 1;
            for (int k = 0; k < dim_; ++k) {
                cells_[k] = static_cast<std::int64_t>(std::floor((hi[k] - lo_[k]) / cell_)) + 1;
                total *= static_cast<std::size_t>(cells_[k]);
            }
            if (total <= 4 * balls.size() + 8) {
                total_cells_ = total;
                break;
            }
            cell_ *= 1.5;
        }
        for (int k = dim_; k < kMaxDim; ++k) cells_[k] = 1;

        start_.assign(total_cells_ + 1, 0);
        cell_of_.resize(balls.size());
        for (std::size_t i = 0; i < balls.size(); ++i) {
            cell_of_[i] = coords_of(balls[i].center);
            ++start_[flat(cell_of_[i]) + 1];
        }
        std::partial_sum(start_.begin(), start_.end(), start_.begin());
        members_.resize(balls.size());
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < balls.size(); ++i) {
            members_[fill[flat(cell_of_[i])]++] = i;
        }
        // Packed copy of the coordinates; avoids chasing one heap block per center.
        coords_.resize(balls.size() * kMaxDim);
        for (std::size_t i = 0; i < balls.size(); ++i) {
            for (int k = 0; k < dim_; ++k) coords_[i * kMaxDim + k] = balls[i].center[k];
        }
    }

    // Same arithmetic (and therefore the same bits) as distance().
    double dist(std::size_t i, std::size_t j) const {
        const double* p = &coords_[i * kMaxDim];
        const double* q = &coords_[j * kMaxDim];
        double s = 0.0;
        for (int k = 0; k < dim_; ++k) {
            const double diff = p[k] - q[k];
            s += diff * diff;
        }
        return std::sqrt(s);
    }

    double cell_size() const { return cell_; }
    std::size_t total_cells() const { return total_cells_; }

    std::int64_t max_span() const {
        std::int64_t m = 0;
        for (int k = 0; k < dim_; ++k) m = std::max(m, cells_[k]);
        return m;
    }

    // Calls fn(j) for every member of cells at Chebyshev offset exactly `ring`
    // from the cell of ball i.
    template <class Fn>
    void for_ring(std::size_t i, std::int64_t ring, Fn&& fn) const {
        const auto& c = cell_of_[i];
        std::array<std::int64_t, kMaxDim> lo{}, hi{};
        for (int k = 0; k < kMaxDim; ++k) {
            const std::int64_t r = k < dim_ ? ring : 0;
            lo[k] = std::max<std::int64_t>(c[k] - r, 0);
            hi[k] = std::min<std::int64_t>(c[k] + r, cells_[k] - 1);
        }
        auto visit = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
            const std::size_t f = static_cast<std::size_t>((x * cells_[1] + y) * cells_[2] + z);
            for (std::size_t m = start_[f]; m < start_[f + 1]; ++m) fn(members_[m]);
        };
        for (std::int64_t x = lo[0]; x <= hi[0]; ++x) {
            const bool x_edge = x == c[0] - ring || x == c[0] + ring;
            for (std::int64_t y = lo[1]; y <= hi[1]; ++y) {
                const bool xy_edge = x_edge || (dim_ >= 2 && (y == c[1] - ring || y == c[1] + ring));
                if (xy_edge) {
                    for (std::int64_t z = lo[2]; z <= hi[2]; ++z) visit(x, y, z);
                } else if (dim_ == 3) {
                    // Interior column: only the two end cells are on the ring.
                    if (c[2] - ring >= 0) visit(x, y, c[2] - ring);
                    if (c[2] + ring < cells_[2]) visit(x, y, c[2] + ring);
                }
            }
        }
    }

private:
    std::array<std::int64_t, kMaxDim> coords_of(const Point& p) const {
        std::array<std::int64_t, kMaxDim> c{};
        for (int k = 0; k < dim_; ++k) {
            c[k] = static_cast<std::int64_t>(std::floor((p[k] - lo_[k]) / cell_));
            c[k] = std::clamp<std::int64_t>(c[k], 0, cells_[k] - 1);
        }
        return c;
    }

    std::size_t flat(const std::array<std::int64_t, kMaxDim>& c) const {
        return static_cast<std::size_t>((c[0] * cells_[1] + c[1]) * cells_[2] + c[2]);
    }

    int dim_;
    std::array<double, kMaxDim> lo_{};
    std::array<std::int64_t, kMaxDim> cells_{};
    double cell_ = 1.0;
    std::size_t total_cells_ = 1;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> members_;
    std::vector<std::array<std::int64_t, kMaxDim>> cell_of_;
    std::vector<double> coords_;
};

// (distance, index) ordering with ties to the lowest index.
bool closer(double d, std::size_t j, const Neighbor& nb) {
    return d < nb.distance || (d == nb.distance && nb.index && j < *nb.index);
}

void offer(NeighborInfo& info, std::size_t i, std::size_t j, double d) {
    Neighbor& first = info.nearest[i];
    Neighbor& second = info.second[i];
    if (!first.index || closer(d, j, first)) {
        second = first;
        first = {j, d};
    } else if (!second.index || closer(d, j, second)) {
        second = {j, d};
    }
}

NeighborInfo neighbor_scan(const BallInstance& inst) {
    const std::size_t n = inst.size();
    NeighborInfo info{std::vector<Neighbor>(n), std::vector<Neighbor>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            offer(info, i, j, distance(inst[i].center, inst[j].center));
        }
    }
    return info;
}

NeighborInfo neighbor_grid(const BallInstance& inst) {
    const std::size_t n = inst.size();
    NeighborInfo info{std::vector<Neighbor>(n), std::vector<Neighbor>(n)};
    const CenterGrid grid(inst);
    const double h = grid.cell_size();
    const std::int64_t max_ring = grid.max_span();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
            grid.for_ring(i, ring, [&](std::size_t j) {
                if (j != i) offer(info, i, j, grid.dist(i, j));
            });
            // Every center outside rings 0..ring is at least ring*h away.
            const double reach = static_cast<double>(ring) * h * (1.0 - 1e-12);
            if (info.second[i].index && info.second[i].distance < reach) break;
        }
    }
    return info;
}

bool use_grid(const BallInstance& inst, NeighborMethod method) {
    if (inst.dimension() > CenterGrid::kMaxDim) return false;
    switch (method) {
        case NeighborMethod::kScan: return false;
        case NeighborMethod::kGrid: return true;
        case NeighborMethod::kAuto: return inst.size() > 256;
    }
    return false;
}

}  // namespace

NeighborInfo neighbor_info(const BallInstance& inst, NeighborMethod method) {
    return use_grid(inst, method) ? neighbor_grid(inst) : neighbor_scan(inst);
}

std::optional<std::pair<std::size_t, std::size_t>> closest_pair(const std::vector<Point>& points) {
    if (points.size() < 2) return std::nullopt;
    const std::size_t dim = points.front().size();
    if (points.size() > 256 && dim >= 1 && dim <= CenterGrid::kMaxDim) {
        std::vector<Ball> balls;
        balls.reserve(points.size());
        for (const Point& p : points) balls.push_back({p, 0.0});
        const BallInstance as_balls(static_cast<int>(dim), std::move(balls));
        const NeighborInfo info = neighbor_grid(as_balls);
        double best_d = kInf;
        std::pair<std::size_t, std::size_t> best{0, 1};
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Neighbor& nb = info.nearest[i];
            const std::pair<std::size_t, std::size_t> cand{std::min(i, *nb.index),
                                                           std::max(i, *nb.index)};
            if (nb.distance < best_d || (nb.distance == best_d && cand < best)) {
                best_d = nb.distance;
                best = cand;
            }
        }
        return best;
    }
    std::pair<std::size_t, std::size_t> best{0, 1};
    double best_d = kInf;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d = distance(points[i], points[j]);
            if (d < best_d) {
                best_d = d;
                best = {i, j};
            }
        }
    }
    return best;
}

double min_center_distance(const BallInstance& inst) {
    if (inst.size() < 2) {
        throw ValidationError("minimum center distance is undefined for fewer than two balls");
    }
    if (inst.size() > 256 && inst.dimension() <= CenterGrid::kMaxDim) {
        const NeighborInfo info = neighbor_grid(inst);
        double best = kInf;
        for (const Neighbor& nb : info.nearest) best = std::min(best, nb.distance);
        return best;
    }
    double best = kInf;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        for (std::size_t j = i + 1; j < inst.size(); ++j) {
            best = std::min(best, distance(inst[i].center, inst[j].center));
        }
    }
    return best;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_within(const BallInstance& inst,
                                                              double radius,
                                                              NeighborMethod method) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = inst.size();
    bool grid_path = use_grid(inst, method) && radius >= 0.0 && std::isfinite(radius);
    if (grid_path) {
        const CenterGrid grid(inst);
        const auto reach = static_cast<std::int64_t>(std::ceil(radius / grid.cell_size()));
        double window = 1.0;
        for (int k = 0; k < inst.dimension(); ++k) window *= static_cast<double>(2 * reach + 1);
        if (method == NeighborMethod::kAuto && window >= static_cast<double>(grid.total_cells())) {
            grid_path = false;
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::int64_t ring = 0; ring <= reach; ++ring) {
                    grid.for_ring(i, ring, [&](std::size_t j) {
                        if (j > i && grid.dist(i, j) <= radius) {
                            out.emplace_back(i, j);
                        }
                    });
                }
            }
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance(inst[i].center, inst[j].center) <= radius) out.emplace_back(i, j);
        }
    }
    return out;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (std::size_t v = 0; v < violations.size(); ++v) {
        if (v) os << "; ";
        os << violations[v].rule;
        if (!violations[v].indices.empty()) {
            os << " (";
            for (std::size_t k = 0; k < violations[v].indices.size(); ++k) {
                os << (k ? "," : "") << violations[v].indices[k];
            }
            os << ")";
        }
    }
    return os.str();
}

ValidationReport validate(const BallInstance& inst, bool require_disjoint, bool require_unit) {
    ValidationReport report;
    if (require_unit) {
        for (std::size_t i = 0; i < inst.size(); ++i) {
            if (std::abs(inst[i].radius - 1.0) > kGeomTol) {
                report.violations.push_back({"radius must be 1 for unit instances", {i}});
            }
        }
    }
    if (require_disjoint) {
        for (const auto& [i, j] : overlapping_pairs(inst)) {
            report.violations.push_back({"balls must be interior-disjoint", {i, j}});
        }
    }
    return report;
}

ValidationReport validate_solution(const BallInstance& inst, const Solution& sol) {
    ValidationReport report;
    if (sol.points.size() != inst.size()) {
        report.violations.push_back({"solution must have one point per ball", {}});
        return report;
    }
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (sol.points[i].size() != static_cast<std::size_t>(inst.dimension())) {
            report.violations.push_back({"point has wrong dimension", {i}});
            continue;
        }
        if (distance(sol.points[i], inst[i].center) > inst[i].radius + kGeomTol) {
            report.violations.push_back({"point lies outside its ball", {i}});
        }
    }
    if (report.ok()) {
        const double m = min_pairwise_distance(sol.points);
        const bool both_inf = std::isinf(m) && std::isinf(sol.min_distance);
        if (!both_inf && !(std::abs(m - sol.min_distance) <= kGeomTol)) {
            report.violations.push_back({"min_distance does not match the points", {}});
        }
    }
    return report;
}

Solution make_solution(std::vector<Point> points, std::string algorithm) {
    Solution sol;
    sol.min_distance = min_pairwise_distance(points);
    sol.points = std::move(points);
    sol.algorithm = std::move(algorithm);
    return sol;
}

}  // namespace dispersion
