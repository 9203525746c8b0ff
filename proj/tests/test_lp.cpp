#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dispersion/error.hpp"
#include "dispersion/lp.hpp"
#include "support/oracles.hpp"

using namespace dispersion::lp;

TEST(Lp, SingleBound) {
    LPModel m;
    const auto z = m.add_variable("z");
    m.maximize_variable(z);
    m.add_constraint({{z, 1.0}}, Relation::kLessEqual, 1.0);
    const LPSolution s = solve_lp(m);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

TEST(Lp, Infeasible) {
    LPModel m;
    const auto z = m.add_variable("z");
    const auto x = m.add_variable("x");
    m.maximize_variable(z);
    m.add_constraint({{z, 1.0}, {x, -1.0}}, Relation::kLessEqual, 0.0);
    m.add_constraint({{x, 1.0}}, Relation::kLessEqual, 0.0);
    m.add_constraint({{x, 1.0}}, Relation::kGreaterEqual, 1.0);
    EXPECT_EQ(solve_lp(m).status, Status::kInfeasible);
}

TEST(Lp, Unbounded) {
    LPModel m;
    const auto z = m.add_variable("z");
    const auto x = m.add_variable("x");
    m.maximize_variable(z);
    m.add_constraint({{z, 1.0}, {x, -1.0}}, Relation::kLessEqual, 0.0);
    EXPECT_EQ(solve_lp(m).status, Status::kUnbounded);
}

TEST(Lp, LineIntervals) {
    // x_i in [a_i, b_i], x_{i+1} - x_i >= z.
    LPModel m;
    const double a[] = {0, 2, 4}, b[] = {1, 3, 5};
    for (int i = 0; i < 3; ++i) m.add_variable("x" + std::to_string(i), a[i], b[i]);
    const auto z = m.add_variable("z");
    m.maximize_variable(z);
    for (std::size_t i = 0; i + 1 < 3; ++i) {
        m.add_constraint({{i + 1, 1.0}, {i, -1.0}, {z, -1.0}}, Relation::kGreaterEqual, 0.0);
    }
    const LPSolution s = solve_lp(m);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, 2.5, 1e-9);
    EXPECT_LE(s.max_violation, 1e-7);
}

TEST(Lp, MalformedModels) {
    LPModel m;
    const auto x = m.add_variable("x");
    m.maximize_variable(x);
    EXPECT_NO_THROW(m.check_well_formed());
    LPModel bad_index = m;
    bad_index.add_constraint({{5, 1.0}}, Relation::kLessEqual, 1.0);
    EXPECT_THROW(bad_index.check_well_formed(), dispersion::ValidationError);
    EXPECT_THROW(solve_lp(bad_index), dispersion::ValidationError);
    LPModel nan_coeff = m;
    nan_coeff.add_constraint({{x, std::nan("")}}, Relation::kLessEqual, 1.0);
    EXPECT_THROW(nan_coeff.check_well_formed(), dispersion::ValidationError);
    LPModel dup = m;
    dup.add_constraint({{x, 1.0}, {x, 2.0}}, Relation::kLessEqual, 1.0);
    EXPECT_THROW(dup.check_well_formed(), dispersion::ValidationError);
    LPModel inverted = m;
    inverted.add_variable("y", 2.0, 1.0);
    EXPECT_THROW(inverted.check_well_formed(), dispersion::ValidationError);
}

namespace {

struct RandomLp {
    LPModel model;
    std::vector<std::vector<double>> a;  // <= rows, including the box
    std::vector<double> b;
    std::vector<double> c;
};

// Feasible by construction (x0 satisfies every row) and bounded by a box.
RandomLp random_lp(std::mt19937_64& rng, int n, int m) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RandomLp out;
    std::vector<double> x0(n);
    for (int k = 0; k < n; ++k) {
        x0[k] = 3.0 * u(rng);
        out.model.add_variable("x" + std::to_string(k));
    }
    for (int r = 0; r < m; ++r) {
        std::vector<double> row(n);
        std::vector<Term> terms;
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            row[k] = std::round(4.0 * u(rng)) / 2.0;  // small rationals make degeneracy likely
            if (row[k] != 0.0) terms.push_back({static_cast<std::size_t>(k), row[k]});
            s += row[k] * x0[k];
        }
        const double rhs = s + std::abs(u(rng)) * (r % 3 == 0 ? 0.0 : 1.0);
        if (r % 2 == 0) {
            out.model.add_constraint(terms, Relation::kLessEqual, rhs);
            out.a.push_back(row);
            out.b.push_back(rhs);
        } else {
            for (auto& t : terms) t.coeff = -t.coeff;
            out.model.add_constraint(terms, Relation::kGreaterEqual, -rhs);
            out.a.push_back(row);
            out.b.push_back(rhs);
        }
    }
    for (int k = 0; k < n; ++k) {
        std::vector<double> row(n, 0.0);
        row[k] = 1.0;
        out.model.add_constraint({{static_cast<std::size_t>(k), 1.0}}, Relation::kLessEqual, 10.0);
        out.a.push_back(row);
        out.b.push_back(10.0);
        row[k] = -1.0;
        out.model.add_constraint({{static_cast<std::size_t>(k), -1.0}}, Relation::kLessEqual, 10.0);
        out.a.push_back(row);
        out.b.push_back(10.0);
    }
    std::vector<Term> obj;
    for (int k = 0; k < n; ++k) {
        out.c.push_back(u(rng));
        obj.push_back({static_cast<std::size_t>(k), out.c.back()});
    }
    out.model.set_objective(obj);
    return out;
}

}  // namespace

TEST(Lp, MatchesVertexEnumeration) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);   // plus 2n box rows
        const int m = static_cast<int>(rng() % (12 - 2 * n + 1));
        RandomLp lp = random_lp(rng, n, m);
        const LPSolution s = solve_lp(lp.model);
        const auto ref = oracle::lp_vertex_max(lp.a, lp.b, lp.c);
        ASSERT_TRUE(ref.has_value());
        ASSERT_EQ(s.status, Status::kOptimal) << t;
        EXPECT_NEAR(s.objective, *ref, 1e-6) << t;
    }
}

TEST(Lp, NoImprovingFeasibleDirection) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        RandomLp lp = random_lp(rng, 4, 6);
        const LPSolution s = solve_lp(lp.model);
        ASSERT_EQ(s.status, Status::kOptimal);
        for (int k = 0; k < 100; ++k) {
            std::vector<double> x = s.values;
            for (double& v : x) v += 1e-3 * u(rng);
            if (lp.model.max_violation(x) > 0.0) continue;
            EXPECT_LE(lp.model.evaluate_objective(x), s.objective + 1e-6);
        }
    }
}

TEST(Lp, Deterministic) {
    std::mt19937_64 rng(8);
    RandomLp lp = random_lp(rng, 5, 2);
    const LPSolution a = solve_lp(lp.model), b = solve_lp(lp.model);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Lp, DegenerateCycleExample) {
    // Beale's classic cycling LP for Dantzig's rule (as a max problem).
    LPModel m;
    for (int k = 0; k < 4; ++k) m.add_variable("x" + std::to_string(k), 0.0);
    m.set_objective({{0, 0.75}, {1, -150.0}, {2, 0.02}, {3, -6.0}});
    m.add_constraint({{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, Relation::kLessEqual, 0.0);
    m.add_constraint({{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, Relation::kLessEqual, 0.0);
    m.add_constraint({{2, 1.0}}, Relation::kLessEqual, 1.0);
    const LPSolution s = solve_lp(m);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, 0.05, 1e-9);
}

TEST(Lp, IterationLimitIsReported) {
    std::mt19937_64 rng(9);
    RandomLp lp = random_lp(rng, 4, 6);
    SolverOptions opts;
    opts.max_iterations = 1;
    const LPSolution s = solve_lp(lp.model, opts);
    EXPECT_EQ(s.status, Status::kIterationLimit);
}

TEST(Lp, WritesLpFormat) {
    LPModel m;
    const auto x = m.add_variable("x", 0.0, 4.0);
    const auto z = m.add_variable("z");
    m.maximize_variable(z);
    m.add_constraint({{z, 1.0}, {x, -1.0}}, Relation::kLessEqual, 0.0, "link");
    std::ostringstream os;
    write_lp_format(m, os);
    const std::string text = os.str();
    EXPECT_NE(text.find("Maximize"), std::string::npos);
    EXPECT_NE(text.find("link:"), std::string::npos);
    EXPECT_NE(text.find("z free"), std::string::npos);
    EXPECT_NE(text.find("End"), std::string::npos);
}
