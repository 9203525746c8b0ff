#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dispersion/centers_a1.hpp"
#include "dispersion/certify.hpp"
#include "dispersion/error.hpp"
#include "dispersion/io.hpp"
#include "dispersion/ratio.hpp"
#include "support/oracles.hpp"

using namespace dispersion;

namespace {

BallInstance units(std::vector<Point> centers) {
    std::vector<Ball> balls;
    for (auto& c : centers) balls.push_back({std::move(c), 1.0});
    const int d = static_cast<int>(balls.front().center.size());
    return BallInstance(d, std::move(balls));
}

}  // namespace

TEST(Centers, TangentPair) {
    const BallInstance inst = units({{0, 0}, {2, 0}});
    const Solution sol = solve_centers(inst);
    EXPECT_EQ(sol.algorithm, "centers");
    EXPECT_DOUBLE_EQ(sol.min_distance, 2.0);
    EXPECT_DOUBLE_EQ(certify(sol, inst).ratio_lower_bound, 0.5);
}

TEST(Centers, SingleAndMixed) {
    EXPECT_EQ(solve_centers(units({{4, 4}})).min_distance, kInf);
    const BallInstance mixed(2, {{{0, 0}, 1.0}, {{3, 0}, 2.0}});
    EXPECT_DOUBLE_EQ(solve_centers(mixed).min_distance, 3.0);
}

TEST(A1, TangentPairMatches) {
    const A1Outcome out = solve_a1(units({{0, 0}, {2, 0}}));
    EXPECT_EQ(out.case_tag, A1Case::kMatching);
    EXPECT_NEAR(out.sigma, 2.08831310798, 1e-10);
    const double move = (out.sigma - 2.0) / 4.0;
    EXPECT_NEAR(move, 0.0220782769947, 1e-12);
    EXPECT_NEAR(out.solution.points[0][0], -move, 1e-15);
    EXPECT_NEAR(out.solution.points[1][0], 2.0 + move, 1e-15);
    EXPECT_NEAR(out.solution.min_distance, 2.04415655399, 1e-10);
    EXPECT_NEAR(out.guaranteed_value, (out.sigma + 2.0) / 2.0, 1e-15);
    EXPECT_FALSE(out.matching_fallback);
    // OPT = 4 for the pair.
    EXPECT_NEAR(out.solution.min_distance / 4.0, ratio::c(2.0), 1e-12);
}

TEST(A1, EquilateralTripleUsesCenters) {
    const double h = 4.0 * std::sqrt(3.0) / 2.0;
    const BallInstance inst = units({{0, 0}, {4, 0}, {2, h}});
    const A1Outcome out = solve_a1(inst);
    EXPECT_EQ(out.case_tag, A1Case::kCenters);
    EXPECT_NEAR(out.solution.min_distance, 4.0, 1e-12);
    EXPECT_NEAR(out.guaranteed_value, out.delta, 1e-15);
    // Upper bound from the three-disk lemma.
    EXPECT_NEAR(opt_upper_unit(inst), std::min(6.0, ratio::f(4.0)), 1e-9);
    EXPECT_NEAR(ratio::f(4.0), 5.84096258932, 1e-10);
}

TEST(A1, SingleBall) {
    const A1Outcome out = solve_a1(units({{1, 2}}));
    EXPECT_EQ(out.case_tag, A1Case::kCenters);
    EXPECT_TRUE(std::isnan(out.sigma));
    EXPECT_EQ(out.solution.points[0], (Point{1, 2}));
}

TEST(A1, Preconditions) {
    EXPECT_THROW(solve_a1(BallInstance(2, {{{0, 0}, 1.0}, {{5, 0}, 2.0}})), ValidationError);
    EXPECT_THROW(solve_a1(units({{0, 0}, {0, 0}})), ValidationError);
}

TEST(A1, OverlappingUnitPair) {
    // Not disjoint is fine for A1.
    const A1Outcome out = solve_a1(units({{0, 0}, {1, 0}}));
    EXPECT_EQ(out.case_tag, A1Case::kMatching);
    EXPECT_NEAR(out.solution.min_distance, (ratio::solve_sigma(1.0) + 1.0) / 2.0, 1e-12);
}

TEST(A1, StructuralInvariants) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        io::GeneratorSpec spec;
        spec.kind = seed % 2 ? io::GeneratorKind::kDisjointUnit : io::GeneratorKind::kUnitOverlap;
        spec.n = 5 + seed * 3;
        spec.seed = seed;
        spec.min_gap = seed % 3 ? 0.0 : 0.5;
        spec.dimension = 2 + static_cast<int>(seed % 2);
        const BallInstance inst = io::generate(spec);
        if (min_center_distance(inst) == 0.0) continue;
        const A1Outcome out = solve_a1(inst);
        const auto nb = oracle::scan_neighbors(inst);
        bool trigger = false;
        for (double s : nb.second_d) trigger = trigger || s <= out.sigma;
        EXPECT_EQ(out.case_tag == A1Case::kCenters, trigger || out.matching_fallback);
        EXPECT_GE(out.solution.min_distance, out.guaranteed_value - 1e-9);
        EXPECT_TRUE(validate_solution(inst, out.solution).ok());
        EXPECT_FALSE(out.matching_fallback);
        if (out.case_tag == A1Case::kMatching) {
            for (std::size_t i = 0; i < inst.size(); ++i) {
                if (nb.nearest_d[i] <= out.sigma) {
                    EXPECT_EQ(nb.nearest[*nb.nearest[i]], i);
                }
            }
        }
    }
}

TEST(A1, LargeInstanceUsesGrid) {
    io::GeneratorSpec spec;
    spec.n = 5000;
    spec.seed = 4;
    const BallInstance inst = io::generate(spec);
    const A1Outcome out = solve_a1(inst);
    EXPECT_GE(out.solution.min_distance, out.guaranteed_value - 1e-9);
}
