#include "dispersion/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dispersion/error.hpp"

namespace dispersion::ratio {

namespace {

constexpr int kMaxBisection = 200;
constexpr double kSigmaResidual = 1e-12;
constexpr double kCrossoverResidual = 1e-9;

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require(bool ok, const char* what, double v) {
    if (!ok) throw ValidationError(std::string(what) + ", got " + num(v));
}

}  // namespace

double f(double s) {
    require(s >= 0.0 && std::isfinite(s), "f(s) needs s >= 0", s);
    const double q = (1.0 + s) * (1.0 + s);
    return std::sqrt(q + 0.5 + std::sqrt(3.0 * q - 0.75));
}

double sigma_residual(double delta, double sigma) {
    return delta / f(sigma) - (sigma + delta) / (2.0 * (delta + 2.0));
}

double solve_sigma(double delta) {
    require(delta > 0.0 && std::isfinite(delta), "sigma needs delta > 0", delta);
    // The residual is strictly decreasing in sigma, positive at delta and
    // negative at delta + 4.
    double lo = delta;
    double hi = delta + 4.0;
    double best = 0.5 * (lo + hi);
    double best_res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxBisection; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double r = sigma_residual(delta, mid);
        if (std::abs(r) < best_res) {
            best_res = std::abs(r);
            best = mid;
        }
        if (r == 0.0) break;
        if (r > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (!(best_res <= kSigmaResidual)) {
        throw SolverError("sigma bisection stalled at residual " + num(best_res) + " for delta " +
                          num(delta));
    }
    return best;
}

CForms c_forms(double delta) {
    const double sigma = solve_sigma(delta);
    return {delta / f(sigma), (sigma + delta) / (2.0 * (delta + 2.0))};
}

double c(double delta) { return c_forms(delta).via_sigma; }

double c1(double x) {
    require(x >= 0.0 && x <= 2.0, "c1(x) is defined for 0 <= x <= 2", x);
    if (x < 1.0) return 0.5;
    return (-kSqrt3 + kSqrt3 * x + std::sqrt(3.0 + 2.0 * x - x * x)) / (4.0 * x);
}

double c2(double x) {
    require(x >= 1.0 && std::isfinite(x), "c2(x) needs x >= 1", x);
    return (x - 1.0) / x;
}

double a1(double x) {
    require(x > 1.0 && std::isfinite(x), "a1(x) needs x > 1", x);
    return c(2.0 * x - 2.0);
}

double a2(double x, double mu) {
    require(x >= 1.0 && x <= 2.0, "a2 needs x in [1, 2]", x);
    require(mu >= 0.0 && mu <= 1.0, "a2 needs mu in [0, 1]", mu);
    return (x - 1.0 + mu) / (x * kSqrt2);
}

double y1(double mu) {
    require(mu >= 0.0 && mu <= 1.0, "y1 needs mu in [0, 1]", mu);
    return (-(4.0 - kSqrt6) * mu + std::sqrt(12.0 - 4.0 * kSqrt6 - 2.0 * mu * mu)) /
           (2.0 * (3.0 - kSqrt6));
}

double mu0() { return 1.0 / std::sqrt(9.0 - 2.0 * kSqrt6); }

double mu0_alt() { return std::sqrt((9.0 + 2.0 * kSqrt6) / 57.0); }

double mu0_solved() {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < kMaxBisection; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (y1(mid) - mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double hybrid_bound() { return kSqrt2 / (1.0 + std::sqrt(9.0 - 2.0 * kSqrt6)); }

double c1_c2_crossover_closed_form_x() { return 1.0 + 1.0 / std::sqrt(5.0 - 2.0 * kSqrt3); }

double c1_c2_crossover_closed_form_value() {
    return 1.0 / (std::sqrt(5.0 - 2.0 * kSqrt3) + 1.0);
}

CrossoverResult crossover(const Curve& curve_a, const Curve& curve_b, double lo, double hi) {
    if (!(lo < hi)) throw ValidationError("crossover needs lo < hi");
    auto diff = [&](double x) { return curve_a(x) - curve_b(x); };
    double d_lo = diff(lo);
    const double d_hi = diff(hi);
    if (d_lo == 0.0) return {lo, curve_a(lo), 0.0};
    if (d_hi == 0.0) return {hi, curve_a(hi), 0.0};
    if ((d_lo > 0.0) == (d_hi > 0.0)) {
        throw ValidationError("crossover bracket [" + num(lo) + ", " + num(hi) +
                              "] has no sign change");
    }
    for (int it = 0; it < kMaxBisection; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double d_mid = diff(mid);
        if (d_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((d_mid > 0.0) == (d_lo > 0.0)) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    const double x = std::abs(diff(lo)) <= std::abs(diff(hi)) ? lo : hi;
    const CrossoverResult result{x, curve_a(x), std::abs(diff(x))};
    if (!(result.residual <= kCrossoverResidual)) {
        throw SolverError("crossover residual " + num(result.residual) + " above tolerance");
    }
    return result;
}

double hybrid_floor(double mu, int grid) {
    require(mu >= 0.0 && mu <= 1.0, "hybrid_floor needs mu in [0, 1]", mu);
    if (grid < 2) throw ValidationError("hybrid_floor needs a grid of at least 2 points");
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
        const double x = 1.0 + mu * static_cast<double>(k) / static_cast<double>(grid - 1);
        worst = std::min(worst, std::max(c1(x), a2(x, mu)));
    }
    return worst;
}

double a2_ratio(double epsilon) {
    require(epsilon >= 0.0 && epsilon < 1.0, "epsilon must lie in [0, 1)", epsilon);
    return (1.0 - epsilon) / kSqrt2;
}

}  // namespace dispersion::ratio
