#include "drni/lp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support/tableau_oracle.hpp"

using namespace drni;

TEST(Lp, SingleLowerBoundedVariable) {
    LinearModel m;
    const int x = m.add_variable("x", -kInfinity, kInfinity, 1.0);
    m.add_constraint("c", {{x, 1.0}}, RowSense::GreaterEqual, 1.0);
    const LpSolution sol = solve_lp(m);
    ASSERT_EQ(sol.status, SolveStatus::Optimal);
    EXPECT_NEAR(sol.objective, 1.0, 1e-9);
    EXPECT_NEAR(sol.dual(m, "c"), 1.0, 1e-9);
}

TEST(Lp, DetectsInfeasibility) {
    LinearModel m;
    const int x = m.add_variable("x", 0.0, kInfinity, 0.0);
    m.add_constraint("c", {{x, 1.0}}, RowSense::LessEqual, -1.0);
    EXPECT_EQ(solve_lp(m).status, SolveStatus::Infeasible);
}

TEST(Lp, DetectsUnboundedness) {
    LinearModel m;
    const int x = m.add_variable("x", -kInfinity, kInfinity, -1.0);
    m.add_constraint("c", {{x, -1.0}}, RowSense::LessEqual, 0.0);
    const LpSolution sol = solve_lp(m);
    ASSERT_EQ(sol.status, SolveStatus::Unbounded);
    ASSERT_EQ(sol.ray.size(), 1u);
    EXPECT_GT(sol.ray[0], 0.0);
}

TEST(Lp, EqualityAndBoundsMix) {
    LinearModel m;
    const int x = m.add_variable("x", 0.0, 2.0, 1.0);
    const int y = m.add_variable("y", 0.0, 2.0, 2.0);
    m.add_constraint("eq", {{x, 1.0}, {y, 1.0}}, RowSense::Equal, 3.0);
    const LpSolution sol = solve_lp(m);
    ASSERT_EQ(sol.status, SolveStatus::Optimal);
    EXPECT_NEAR(sol.objective, 4.0, 1e-8);  // x = 2, y = 1
    EXPECT_NEAR(sol.primal[x], 2.0, 1e-8);
    EXPECT_NEAR(sol.primal[y], 1.0, 1e-8);
}

namespace {

LinearModel random_model(std::mt19937_64& gen, int n, int m) {
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_int_distribution<int> kind(0, 3);
    LinearModel model;
    for (int j = 0; j < n; ++j) {
        const int k = kind(gen);
        double lb = 0.0, ub = kInfinity;
        if (k == 1) ub = std::abs(coef(gen)) + 0.5;
        if (k == 2) { lb = -kInfinity; ub = std::abs(coef(gen)); }
        if (k == 3) { lb = -kInfinity; ub = kInfinity; }
        model.add_variable("x" + std::to_string(j), lb, ub, coef(gen));
    }
    std::uniform_int_distribution<int> sense(0, 2);
    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<int, double>> row;
        for (int j = 0; j < n; ++j)
            if (kind(gen) != 0) row.emplace_back(j, coef(gen));
        if (row.empty()) row.emplace_back(i % n, 1.0);
        const RowSense s = static_cast<RowSense>(sense(gen));
        model.add_constraint("r" + std::to_string(i), std::move(row), s, coef(gen));
    }
    return model;
}

}  // namespace

TEST(Lp, AgreesWithTableauOracleOnRandomModels) {
    std::mt19937_64 gen(20240817);
    int optimal = 0, infeasible = 0, unbounded = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const LinearModel model = random_model(gen, 2 + trial % 5, 1 + trial % 6);
        const LpSolution sol = solve_lp(model);
        const oracles::TableauResult oracle = oracles::tableau_solve(model);
        ASSERT_EQ(sol.status, oracle.status) << "trial " << trial;
        if (sol.status == SolveStatus::Optimal) {
            ++optimal;
            EXPECT_NEAR(sol.objective, oracle.objective,
                        1e-6 * (1.0 + std::abs(oracle.objective)))
                << "trial " << trial;
        } else if (sol.status == SolveStatus::Infeasible) {
            ++infeasible;
        } else {
            ++unbounded;
        }
    }
    // the generator must exercise all three outcomes
    EXPECT_GT(optimal, 20);
    EXPECT_GT(infeasible, 5);
    EXPECT_GT(unbounded, 5);
}

TEST(Lp, DualityHookHoldsOnEveryOptimalSolve) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 150; ++trial) {
        const LinearModel model = random_model(gen, 2 + trial % 6, 1 + trial % 5);
        const LpSolution sol = solve_lp(model);
        if (sol.status != SolveStatus::Optimal) continue;
        const LpCheck chk = check_lp_solution(model, sol);
        EXPECT_LE(chk.primal_infeasibility, 1e-7) << "trial " << trial;
        EXPECT_LE(chk.dual_infeasibility, 1e-7) << "trial " << trial;
        EXPECT_LE(chk.complementarity, 1e-6) << "trial " << trial;
        EXPECT_LE(chk.duality_gap, 1e-6) << "trial " << trial;
    }
}

TEST(Lp, DeterministicAcrossRepeatSolves) {
    std::mt19937_64 gen(99);
    const LinearModel model = random_model(gen, 6, 5);
    const LpSolution a = solve_lp(model);
    const LpSolution b = solve_lp(model);
    ASSERT_EQ(a.status, b.status);
    if (a.status == SolveStatus::Optimal) {
        for (std::size_t j = 0; j < a.primal.size(); ++j)
            EXPECT_EQ(a.primal[j], b.primal[j]);
    }
}

TEST(Lp, RejectsMalformedModels) {
    LinearModel m;
    EXPECT_THROW(m.add_variable("x", 1.0, 0.0, 0.0), ContractViolation);
    m.add_variable("x", 0.0, 1.0, 0.0);
    m.add_constraint("c", {{0, 1.0}}, RowSense::LessEqual, 1.0);
    EXPECT_THROW(m.add_constraint("c", {{0, 1.0}}, RowSense::LessEqual, 2.0), ContractViolation);
    EXPECT_THROW(m.add_constraint("d", {{3, 1.0}}, RowSense::LessEqual, 2.0), ContractViolation);
}

TEST(Lp, WritesLpFormat) {
    LinearModel m;
    const int x = m.add_variable("x", 0.0, 2.0, 1.5);
    const int y = m.add_variable("y", -kInfinity, kInfinity, -1.0);
    m.add_constraint("cap", {{x, 1.0}, {y, -2.0}}, RowSense::LessEqual, 4.0);
    m.add_constraint("bal", {{x, 1.0}, {y, 1.0}}, RowSense::Equal, 1.0);
    std::ostringstream out;
    write_lp_format(m, out);
    const std::string text = out.str();
    EXPECT_NE(text.find("Minimize"), std::string::npos);
    EXPECT_NE(text.find("cap:"), std::string::npos);
    EXPECT_NE(text.find("bal:"), std::string::npos);
    EXPECT_NE(text.find("y free"), std::string::npos);
    EXPECT_NE(text.find("End"), std::string::npos);
}
