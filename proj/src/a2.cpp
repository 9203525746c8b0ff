#include "dispersion/a2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dispersion/error.hpp"

namespace dispersion {

namespace {

double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

// Solves the d x d system rows * x = rhs by Gaussian elimination with partial
// pivoting. Returns false for (near) singular systems.
bool solve_small(std::vector<Point> rows, Point rhs, Point& x) {
    const std::size_t d = rhs.size();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::abs(rows[r][col]) > std::abs(rows[piv][col])) piv = r;
        }
        if (std::abs(rows[piv][col]) < 1e-12) return false;
        std::swap(rows[piv], rows[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < d; ++r) {
            const double factor = rows[r][col] / rows[col][col];
            for (std::size_t k = col; k < d; ++k) rows[r][k] -= factor * rows[col][k];
            rhs[r] -= factor * rhs[col];
        }
    }
    x.assign(d, 0.0);
    for (std::size_t r = d; r-- > 0;) {
        double s = rhs[r];
        for (std::size_t k = r + 1; k < d; ++k) s -= rows[r][k] * x[k];
        x[r] = s / rows[r][r];
    }
    return true;
}

std::vector<Halfspace> icosahedron_faces(double offset) {
    // Face normals of a regular icosahedron are the vertex directions of the
    // dual dodecahedron.
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double inv = 1.0 / phi;
    std::vector<Point> dirs;
    for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
            for (double c : {-1.0, 1.0}) dirs.push_back({a, b, c});
        }
    }
    for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
            dirs.push_back({0.0, a * inv, b * phi});
            dirs.push_back({a * inv, b * phi, 0.0});
            dirs.push_back({a * phi, 0.0, b * inv});
        }
    }
    std::vector<Halfspace> faces;
    for (Point& d : dirs) {
        const double norm = std::sqrt(dot(d, d));
        for (double& v : d) v /= norm;
        faces.push_back({std::move(d), offset});
    }
    return faces;
}

}  // namespace

bool ContainerPolytope::contains(const Point& q, double tol) const {
    Point rel(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) rel[k] = q[k] - center[k];
    return std::all_of(halfspaces.begin(), halfspaces.end(),
                       [&](const Halfspace& h) { return dot(h.normal, rel) <= h.offset + tol; });
}

bool ContainerPolytope::satisfies_sandwich() const {
    return inradius >= kInnerScale * ball_radius - kGeomTol &&
           circumradius <= kOuterScale * ball_radius + kGeomTol;
}

ContainerPolytope make_polytope(const Ball& ball, std::vector<Halfspace> halfspaces) {
    const std::size_t d = ball.center.size();
    if (d != 2 && d != 3) throw ValidationError("container polytopes are built for d = 2 or 3 only");
    ContainerPolytope poly;
    poly.center = ball.center;
    poly.ball_radius = ball.radius;
    poly.halfspaces = std::move(halfspaces);
    poly.inradius = kInf;
    for (const Halfspace& h : poly.halfspaces) {
        if (h.normal.size() != d) throw ValidationError("halfspace normal has the wrong dimension");
        // Distance from the center to the facet plane.
        poly.inradius = std::min(poly.inradius, h.offset / std::sqrt(dot(h.normal, h.normal)));
    }

    // Vertices: every feasible intersection of d facet planes.
    const std::size_t m = poly.halfspaces.size();
    std::vector<std::size_t> pick(d);
    auto visit = [&](const std::vector<std::size_t>& idx) {
        std::vector<Point> rows;
        Point rhs;
        for (std::size_t i : idx) {
            rows.push_back(poly.halfspaces[i].normal);
            rhs.push_back(poly.halfspaces[i].offset);
        }
        Point rel;
        if (!solve_small(rows, rhs, rel)) return;
        for (const Halfspace& h : poly.halfspaces) {
            if (dot(h.normal, rel) > h.offset + 1e-9 * std::max(1.0, ball.radius)) return;
        }
        for (const Point& v : poly.vertices) {
            double dd = 0.0;
            for (std::size_t k = 0; k < d; ++k) dd += (v[k] - ball.center[k] - rel[k]) * (v[k] - ball.center[k] - rel[k]);
            if (dd < 1e-18 * std::max(1.0, ball.radius * ball.radius)) return;
        }
        Point abs_v(d);
        for (std::size_t k = 0; k < d; ++k) abs_v[k] = ball.center[k] + rel[k];
        poly.vertices.push_back(std::move(abs_v));
    };
    if (d == 2) {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) visit({a, b});
    } else {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                for (std::size_t c = b + 1; c < m; ++c) visit({a, b, c});
    }
    if (poly.vertices.empty()) throw ValidationError("halfspaces do not describe a bounded polytope");
    poly.circumradius = 0.0;
    for (const Point& v : poly.vertices) {
        poly.circumradius = std::max(poly.circumradius, distance(v, ball.center));
    }
    return poly;
}

ContainerPolytope build_container_polytope(const Ball& ball, int dimension) {
    if (static_cast<std::size_t>(dimension) != ball.center.size()) {
        throw ValidationError("ball dimension does not match the requested dimension");
    }
    const double offset = kInnerScale * ball.radius;
    std::vector<Halfspace> faces;
    if (dimension == 2) {
        faces = {{{1.0, 0.0}, offset}, {{-1.0, 0.0}, offset}, {{0.0, 1.0}, offset},
                 {{0.0, -1.0}, offset}};
    } else if (dimension == 3) {
        faces = icosahedron_faces(offset);
    } else {
        throw ValidationError("unsupported dimension " + std::to_string(dimension) +
                              " for container polytopes (2 or 3)");
    }
    ContainerPolytope poly = make_polytope(ball, std::move(faces));
    if (!poly.satisfies_sandwich()) {
        throw SolverError("container polytope violates the r/2 .. 3r/4 sandwich");
    }
    return poly;
}

Lp3Model build_lp3(const BallInstance& inst, const std::vector<ContainerPolytope>& polytopes) {
    const std::size_t n = inst.size();
    const auto d = static_cast<std::size_t>(inst.dimension());
    if (n < 2) throw ValidationError("the projection LP needs at least two balls");
    if (polytopes.size() != n) throw ValidationError("need one container polytope per ball");
    const auto overlaps = overlapping_pairs(inst, 1);
    if (!overlaps.empty()) {
        throw ValidationError(
            "a2 requires pairwise interior-disjoint balls (the projection bound needs "
            "disjointness); overlapping pair (" +
            std::to_string(overlaps.front().first) + "," + std::to_string(overlaps.front().second) +
            ")");
    }

    Lp3Model out;
    lp::LPModel& model = out.model;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            model.add_variable("t" + std::to_string(i) + "_" + std::to_string(k));
        }
    }
    out.z_var = model.add_variable("z");
    model.maximize_variable(out.z_var);

    for (std::size_t i = 0; i < n; ++i) {
        const ContainerPolytope& poly = polytopes[i];
        for (std::size_t f = 0; f < poly.halfspaces.size(); ++f) {
            const Halfspace& h = poly.halfspaces[f];
            std::vector<lp::Term> terms;
            for (std::size_t k = 0; k < d; ++k) {
                if (h.normal[k] != 0.0) terms.push_back({i * d + k, h.normal[k]});
            }
            model.add_constraint(std::move(terms), lp::Relation::kLessEqual, h.offset,
                                 "Q" + std::to_string(i) + "_" + std::to_string(f));
            ++out.containment_rows;
        }
    }

    const double delta = min_center_distance(inst);
    out.pairs = pairs_within(inst, 7.0 * delta);
    for (const auto& [i, j] : out.pairs) {
        const double dij = distance(inst[i].center, inst[j].center);
        // <a, (o_j + t_j) - (o_i + t_i)> >= z  with <a, o_j - o_i> = dij.
        std::vector<lp::Term> terms;
        for (std::size_t k = 0; k < d; ++k) {
            const double a = (inst[j].center[k] - inst[i].center[k]) / dij;
            if (a == 0.0) continue;
            terms.push_back({j * d + k, a});
            terms.push_back({i * d + k, -a});
        }
        terms.push_back({out.z_var, -1.0});
        model.add_constraint(std::move(terms), lp::Relation::kGreaterEqual, -dij,
                             "P" + std::to_string(i) + "_" + std::to_string(j));
        ++out.projection_rows;
    }
    return out;
}

A2Outcome solve_a2(const BallInstance& inst, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
    const int d = inst.dimension();
    if (d != 2 && d != 3) {
        throw ValidationError("a2 supports dimension 2 or 3, got " + std::to_string(d));
    }
    if (inst.size() < 2) throw ValidationError("a2 needs at least two balls");

    std::vector<ContainerPolytope> polytopes;
    polytopes.reserve(inst.size());
    for (const Ball& b : inst.balls()) polytopes.push_back(build_container_polytope(b, d));
    const Lp3Model lp3 = build_lp3(inst, polytopes);

    const lp::LPSolution sol = lp::solve_lp(lp3.model);
    if (sol.status != lp::Status::kOptimal) {
        throw SolverError(std::string("projection LP did not solve: ") + lp::to_string(sol.status));
    }

    A2Outcome out;
    out.epsilon = epsilon;
    out.z_star = sol.values[lp3.z_var];
    out.included_pairs = lp3.pairs.size();
    out.lp_iterations = sol.iterations;

    const auto du = static_cast<std::size_t>(d);
    std::vector<Point> points(inst.size(), Point(du));
    for (std::size_t i = 0; i < inst.size(); ++i) {
        for (std::size_t k = 0; k < du; ++k) {
            points[i][k] = inst[i].center[k] + sol.values[i * du + k];
        }
    }

    // The realized projections must reach (1 - eps) z*.
    double realized = kInf;
    for (const auto& [i, j] : lp3.pairs) {
        const double dij = distance(inst[i].center, inst[j].center);
        double proj = 0.0;
        for (std::size_t k = 0; k < du; ++k) {
            proj += (inst[j].center[k] - inst[i].center[k]) / dij * (points[j][k] - points[i][k]);
        }
        realized = std::min(realized, proj);
    }
    if (realized < (1.0 - epsilon) * out.z_star) {
        std::ostringstream os;
        os << "projection LP solution misses the (1 - eps) target: " << realized << " < "
           << (1.0 - epsilon) * out.z_star;
        throw SolverError(os.str());
    }

    out.solution = make_solution(std::move(points), "a2");
    return out;
}

}  // namespace dispersion
