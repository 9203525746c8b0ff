#pragma once

#include <functional>
#include <string>

namespace dispersion::ratio {

/// Three-disk packing bound: any three points in unit disks whose outer
/// centers lie within s of the middle center have min pairwise distance <= f(s).
double f(double s);

/// Residual of the balance equation delta/f(sigma) - (sigma+delta)/(2(delta+2)).
double sigma_residual(double delta, double sigma);

/// Unique root sigma in (delta, delta+4) of the balance equation, by bisection.
double solve_sigma(double delta);

/// Ratio guaranteed by the perturbation algorithm for minimum center distance delta.
double c(double delta);

/// Both closed forms of c at the solved sigma: delta/f(sigma) and (sigma+delta)/(2(delta+2)).
struct CForms {
    double via_f;
    double via_sigma;
};
CForms c_forms(double delta);

/// Ratio curve of the placement algorithm for OPT = 2x (1/2 below x = 1).
double c1(double x);

/// Ratio curve of CENTERS for OPT = 2x, x >= 1.
double c2(double x);

/// Perturbation-algorithm ratio as a function of x: c(2x - 2), x > 1.
double a1(double x);

/// Ratio of the LP algorithm on radius-mu disks, x in [1,2], mu in [0,1] (without the 1-eps factor).
double a2(double x, double mu);

/// Positive root y of c1(1+y) = a2(1+y, mu).
double y1(double mu);
inline double x1(double mu) { return 1.0 + y1(mu); }

/// Fixed point of y1, closed form 1/sqrt(9 - 2 sqrt 6).
double mu0();
/// The same constant written as sqrt((9 + 2 sqrt 6)/57).
double mu0_alt();
/// mu0 located numerically as the root of y1(mu) = mu.
double mu0_solved();

/// sqrt(2)/(1 + sqrt(9 - 2 sqrt 6)): the hybrid lower bound.
double hybrid_bound();

/// 1/(sqrt(5 - 2 sqrt 3) + 1) at x = 1 + 1/sqrt(5 - 2 sqrt 3).
double c1_c2_crossover_closed_form_x();
double c1_c2_crossover_closed_form_value();

struct CrossoverResult {
    double x_star;
    double value;
    double residual;
};

using Curve = std::function<double(double)>;

/// Bisection root of curve_a - curve_b on [lo, hi]; throws ValidationError without a sign change.
CrossoverResult crossover(const Curve& curve_a, const Curve& curve_b, double lo, double hi);

/// min over a uniform grid of [1, 1+mu] of max{c1(x), a2(x, mu)}.
double hybrid_floor(double mu, int grid);

/// Worst-case ratio of the LP algorithm for a given epsilon: (1 - eps)/sqrt(2).
double a2_ratio(double epsilon);

}  // namespace dispersion::ratio
