#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

double side_ab(double r, double th) { return 2.0 * r * std::sin(th); }
double side_ac(double r, double th) {
    const double x = r * std::sin(th);
    const double y = r * std::cos(th) + 1.0;
    return std::sqrt(x * x + y * y);
}

// Typed out again on purpose rather than calling the library.
double f_local(double s) {
    const double u = 1.0 + s;
    return std::sqrt(u * u + 0.5 + std::sqrt(3.0 * u * u - 0.75));
}

}  // namespace

double three_disk_extreme(double s) {
    const double r = s + 1.0;
    auto t = [&](double th) { return std::min(side_ab(r, th), side_ac(r, th)); };
    const int steps = 200000;
    const double pi = std::acos(-1.0);
    double best_th = 0.0, best = -1.0;
    for (int k = 0; k <= steps; ++k) {
        const double th = pi * k / steps;
        if (t(th) > best) {
            best = t(th);
            best_th = th;
        }
    }
    double lo = std::max(0.0, best_th - pi / steps), hi = std::min(pi, best_th + pi / steps);
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (t(m1) < t(m2)) lo = m1; else hi = m2;
    }
    return t(0.5 * (lo + hi));
}

double sigma_scan(double delta, double step) {
    auto g = [&](double s) { return delta / f_local(s) - (s + delta) / (2.0 * (delta + 2.0)); };
    double prev = delta + step;
    for (double s = prev + step; s < delta + 4.0; s += step) {
        if ((g(prev) > 0) != (g(s) > 0)) {
            double lo = prev, hi = s;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((g(mid) > 0) == (g(lo) > 0)) lo = mid; else hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = s;
    }
    throw std::runtime_error("no sign change");
}

bool line_feasible(const std::vector<Iv>& ivs, double z, double x1, std::vector<double>* xs) {
    double x = x1;
    if (xs) xs->assign(1, x);
    if (x < ivs[0].lo || x > ivs[0].hi) return false;
    for (std::size_t i = 1; i < ivs.size(); ++i) {
        x = std::max(ivs[i].lo, x + z);
        if (x > ivs[i].hi) return false;
        if (xs) xs->push_back(x);
    }
    return true;
}

double line_optimum(const std::vector<Iv>& ivs) {
    double lo = 0.0;
    double hi = (ivs.back().hi - ivs.front().lo) / static_cast<double>(ivs.size() - 1) + 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (line_feasible(ivs, mid, ivs[0].lo)) lo = mid; else hi = mid;
    }
    return lo;
}

double cycle_optimum(const std::vector<Iv>& ivs, double length) {
    auto feasible = [&](double z) {
        if (!line_feasible(ivs, z, ivs[0].lo)) return false;
        // Greedy feasibility only gets harder as x1 grows, while the wrap gap
        // x1 + L - x_n never shrinks, so the largest feasible x1 is optimal.
        double a = ivs[0].lo, b = ivs[0].hi;
        if (!line_feasible(ivs, z, b)) {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (line_feasible(ivs, z, mid)) a = mid; else b = mid;
            }
        } else {
            a = b;
        }
        std::vector<double> cands = {ivs[0].lo, a};
        for (int g = 0; g <= 32; ++g) cands.push_back(ivs[0].lo + (a - ivs[0].lo) * g / 32.0);
        std::vector<double> xs;
        for (double x1 : cands) {
            if (line_feasible(ivs, z, x1, &xs) && x1 + length - xs.back() >= z - 1e-12) return true;
        }
        return false;
    };
    double lo = 0.0, hi = length / static_cast<double>(ivs.size()) + 1e-9;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) lo = mid; else hi = mid;
    }
    return lo;
}

std::optional<double> lp_vertex_max(const std::vector<std::vector<double>>& a,
                                    const std::vector<double>& b, const std::vector<double>& c) {
    const std::size_t m = a.size(), n = c.size();
    std::optional<double> best;
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == n) {
            std::vector<std::vector<double>> mat(n, std::vector<double>(n + 1));
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t k = 0; k < n; ++k) mat[r][k] = a[pick[r]][k];
                mat[r][n] = b[pick[r]];
            }
            for (std::size_t col = 0; col < n; ++col) {
                std::size_t piv = col;
                for (std::size_t r = col + 1; r < n; ++r)
                    if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
                if (std::abs(mat[piv][col]) < 1e-10) return;
                std::swap(mat[piv], mat[col]);
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == col) continue;
                    const double fct = mat[r][col] / mat[col][col];
                    for (std::size_t k = col; k <= n; ++k) mat[r][k] -= fct * mat[col][k];
                }
            }
            std::vector<double> x(n);
            for (std::size_t r = 0; r < n; ++r) x[r] = mat[r][n] / mat[r][r];
            for (std::size_t r = 0; r < m; ++r) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += a[r][k] * x[k];
                if (s > b[r] + 1e-8) return;
            }
            double obj = 0.0;
            for (std::size_t k = 0; k < n; ++k) obj += c[k] * x[k];
            if (!best || obj > *best) best = obj;
            return;
        }
        for (std::size_t r = start; r < m; ++r) {
            pick[depth] = r;
            rec(r + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

ScanNeighbors scan_neighbors(const BallInstance& inst) {
    const std::size_t n = inst.size();
    ScanNeighbors out;
    out.nearest.assign(n, std::nullopt);
    out.second.assign(n, std::nullopt);
    out.nearest_d.assign(n, dispersion::kInf);
    out.second_d.assign(n, dispersion::kInf);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = dispersion::distance(inst[i].center, inst[j].center);
            if (d < out.nearest_d[i]) {
                out.second[i] = out.nearest[i];
                out.second_d[i] = out.nearest_d[i];
                out.nearest[i] = j;
                out.nearest_d[i] = d;
            } else if (d < out.second_d[i]) {
                out.second[i] = j;
                out.second_d[i] = d;
            }
        }
    }
    return out;
}

double scan_min_center_distance(const BallInstance& inst) {
    double best = dispersion::kInf;
    for (std::size_t i = 0; i < inst.size(); ++i)
        for (std::size_t j = i + 1; j < inst.size(); ++j)
            best = std::min(best, dispersion::distance(inst[i].center, inst[j].center));
    return best;
}

Point random_in_ball(std::mt19937_64& rng, const Point& center, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Point p(center.size());
        double r2 = 0.0;
        for (double& v : p) {
            v = u(rng);
            r2 += v * v;
        }
        if (r2 > 1.0) continue;
        for (std::size_t k = 0; k < p.size(); ++k) p[k] = center[k] + radius * p[k];
        return p;
    }
}

Point random_unit_vector(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g;
    for (;;) {
        Point p(static_cast<std::size_t>(dim));
        double r2 = 0.0;
        for (double& v : p) {
            v = g(rng);
            r2 += v * v;
        }
        if (r2 < 1e-12) continue;
        for (double& v : p) v /= std::sqrt(r2);
        return p;
    }
}

BallInstance random_disjoint(std::mt19937_64& rng, int n, int dim, double side, double rmin, double rmax) {
    std::uniform_real_distribution<double> u(0.0, side), ur(rmin, rmax);
    std::vector<dispersion::Ball> balls;
    int guard = 0;
    while (static_cast<int>(balls.size()) < n) {
        if (++guard > 1000000) throw std::runtime_error("random_disjoint: too dense");
        dispersion::Ball b{Point(static_cast<std::size_t>(dim)), ur(rng)};
        for (double& v : b.center) v = u(rng);
        bool ok = true;
        for (const auto& o : balls) {
            if (dispersion::distance(o.center, b.center) < o.radius + b.radius) {
                ok = false;
                break;
            }
        }
        if (ok) balls.push_back(std::move(b));
    }
    return BallInstance(dim, std::move(balls));
}

BallInstance random_disjoint_unit(std::mt19937_64& rng, int n, int dim, double side) {
    return random_disjoint(rng, n, dim, side, 1.0, 1.0);
}

}  // namespace oracle
