#include "drni/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drni/lp.hpp"
#include "drni/master.hpp"

namespace drni {

namespace {

constexpr double kTieTol = 1e-7;

std::string idx2(const char* stem, int i, int k) {
    return std::string(stem) + "_" + std::to_string(i) + "_" + std::to_string(k);
}
std::string idx1(const char* stem, int i) { return std::string(stem) + "_" + std::to_string(i); }

/// Plan-indexed robust-counterpart model. With `index_objective` the
/// objective switches to the plan index and the value is capped, which
/// realizes the lexicographic tie rule on the second solve.
struct DetMilp {
    LinearModel lp;
    std::vector<int> u;  // binary per plan
    int t = -1;

    DetMilp(const std::vector<std::vector<double>>& flows, const BudgetedAmbiguitySet& amb,
            const RiskSpec& risk, double zbar, bool index_objective, double value_cap) {
        const int L = static_cast<int>(flows.size());
        const int K = static_cast<int>(flows.front().size());
        const double inv_tail = 1.0 / (1.0 - risk.alpha);

        t = lp.add_variable("t", -kInfinity, kInfinity, index_objective ? 0.0 : 1.0);
        const int zeta = lp.add_variable("zeta", 0.0, zbar, 0.0);
        std::vector<int> w(K), wm(K), beta(K);
        for (int k = 0; k < K; ++k) {
            w[k] = lp.add_variable(idx1("w", k), 0.0, kInfinity, 0.0);
            wm[k] = lp.add_variable(idx1("wm", k), 0.0, kInfinity, 0.0);
            beta[k] = lp.add_variable(idx1("beta", k), -kInfinity, kInfinity, 0.0);
        }
        const int chi = lp.add_variable("chi", 0.0, kInfinity, 0.0);
        u.resize(L);
        std::vector<int> eta(L);
        for (int j = 0; j < L; ++j) {
            u[j] = lp.add_variable(idx1("u", j), 0.0, 1.0,
                                   index_objective ? static_cast<double>(j) : 0.0);
            eta[j] = lp.add_variable(idx1("eta", j), 0.0, zbar, 0.0);
        }
        std::vector<std::vector<int>> delta(L, std::vector<int>(K));
        for (int j = 0; j < L; ++j)
            for (int k = 0; k < K; ++k)
                delta[j][k] = lp.add_variable(idx2("delta", j, k), 0.0, kInfinity, 0.0);

        for (int k = 0; k < K; ++k) {
            std::vector<std::pair<int, double>> row{{zeta, 1.0}, {chi, amb.gamma}, {t, -1.0}};
            for (int kk = 0; kk < K; ++kk) {
                row.emplace_back(w[kk], 1.0);
                row.emplace_back(wm[kk], 1.0);
                row.emplace_back(beta[kk], amb.q_hat[kk]);
            }
            row.emplace_back(beta[k], -1.0);
            for (int j = 0; j < L; ++j) row.emplace_back(delta[j][k], inv_tail);
            lp.add_constraint(idx1("epi", k), std::move(row), RowSense::LessEqual, 0.0);
        }
        for (int k = 0; k < K; ++k) {
            lp.add_constraint(idx1("devp", k),
                              {{beta[k], amb.q_bar[k]}, {w[k], -1.0}, {chi, -1.0}},
                              RowSense::LessEqual, 0.0);
            lp.add_constraint(idx1("devm", k),
                              {{beta[k], -amb.q_bar[k]}, {wm[k], -1.0}, {chi, -1.0}},
                              RowSense::LessEqual, 0.0);
        }
        {
            std::vector<std::pair<int, double>> usum;
            for (int j = 0; j < L; ++j) usum.emplace_back(u[j], 1.0);
            lp.add_constraint("usum", std::move(usum), RowSense::Equal, 1.0);
        }
        for (int j = 0; j < L; ++j) {
            // big-M linearization of eta_j = u_j * zeta, exact because zeta <= zbar
            lp.add_constraint(idx1("eta_lo", j), {{zeta, 1.0}, {u[j], zbar}, {eta[j], -1.0}},
                              RowSense::LessEqual, zbar);
            lp.add_constraint(idx1("eta_z", j), {{eta[j], 1.0}, {zeta, -1.0}},
                              RowSense::LessEqual, 0.0);
            lp.add_constraint(idx1("eta_u", j), {{eta[j], 1.0}, {u[j], -zbar}},
                              RowSense::LessEqual, 0.0);
            for (int k = 0; k < K; ++k)
                lp.add_constraint(idx2("del", j, k),
                                  {{u[j], flows[j][k]}, {eta[j], -1.0}, {delta[j][k], -1.0}},
                                  RowSense::LessEqual, 0.0);
        }
        if (index_objective)
            lp.add_constraint("value_cap", {{t, 1.0}}, RowSense::LessEqual, value_cap);
    }
};

}  // namespace

std::vector<InterdictionPlan> enumerate_plans(int arc_count, int budget, long cap) {
    if (count_plans(arc_count, budget, cap) > cap)
        throw CapExceeded("plan universe exceeds the enumeration cap");
    std::vector<InterdictionPlan> out;
    InterdictionPlan plan = InterdictionPlan::none(arc_count, budget);
    auto dfs = [&](auto&& self, int start, int used) -> void {
        out.push_back(plan);
        if (used == budget) return;
        for (int e = start; e < arc_count; ++e) {
            plan.removed[e] = 1;
            self(self, e + 1, used + 1);
            plan.removed[e] = 0;
        }
    };
    dfs(dfs, 0, 0);
    return out;
}

DeterministicResult solve_deterministic_milp(const Network& net, const ScenarioSet& scenarios,
                                             const BudgetedAmbiguitySet& amb, const RiskSpec& risk,
                                             int budget,
                                             const std::vector<InterdictionPlan>& universe,
                                             const SolverConfig& cfg) {
    require(!universe.empty(), "plan universe must be nonempty");
    risk.validate();
    amb.validate(scenarios.count());
    const double zbar = zeta_bar(net, scenarios);

    std::vector<std::vector<double>> flows(universe.size(),
                                           std::vector<double>(scenarios.count()));
    for (std::size_t j = 0; j < universe.size(); ++j) {
        require(universe[j].cardinality() <= budget, "universe plan exceeds the budget");
        for (int k = 0; k < scenarios.count(); ++k)
            flows[j][k] = max_flow(net, scenarios.capacities[k], universe[j]).value;
    }

    SolverConfig tight = cfg;
    tight.mip_gap = std::min(cfg.mip_gap, 1e-9);

    DetMilp stage1(flows, amb, risk, zbar, false, 0.0);
    const MipSolution s1 = solve_mip(stage1.lp, stage1.u, tight);
    if (s1.status != SolveStatus::Optimal)
        throw NumericalError("deterministic MILP did not solve to optimality");

    // tie rule: among plans within kTieTol of the optimum, pick the
    // lexicographically smallest arc set = the smallest index in the
    // lex-ordered universe
    DetMilp stage2(flows, amb, risk, zbar, true, s1.objective + kTieTol);
    const MipSolution s2 = solve_mip(stage2.lp, stage2.u, tight);
    if (s2.status != SolveStatus::Optimal)
        throw NumericalError("deterministic MILP tie pass did not solve");

    int chosen = -1;
    for (std::size_t j = 0; j < universe.size(); ++j)
        if (s2.primal[stage2.u[j]] > 0.5) chosen = static_cast<int>(j);
    require(chosen >= 0, "deterministic MILP produced no plan");

    DeterministicResult out;
    out.plan = universe[chosen];
    out.value = s1.objective;
    return out;
}

DeterministicResult solve_deterministic_milp(const Network& net, const ScenarioSet& scenarios,
                                             const BudgetedAmbiguitySet& amb, const RiskSpec& risk,
                                             int budget, long universe_cap, const SolverConfig& cfg) {
    if (count_plans(net.arc_count(), budget, universe_cap) > universe_cap)
        throw CapExceeded(
            "plan universe exceeds the MILP cap; use solve_deterministic_enumerate instead");
    return solve_deterministic_milp(net, scenarios, amb, risk, budget,
                                    enumerate_plans(net.arc_count(), budget, universe_cap), cfg);
}

DeterministicResult solve_deterministic_enumerate(const Network& net, const ScenarioSet& scenarios,
                                                  const BudgetedAmbiguitySet& amb,
                                                  const RiskSpec& risk, int budget, long cap,
                                                  const SolverConfig& cfg) {
    const std::vector<InterdictionPlan> universe = enumerate_plans(net.arc_count(), budget, cap);
    std::vector<double> values(universe.size());
    double best = kInfinity;
    for (std::size_t j = 0; j < universe.size(); ++j) {
        values[j] = worst_case_cvar(net, scenarios, amb,
                                    RandomizedStrategy::point_mass(universe[j]), risk, cfg)
                        .value;
        best = std::min(best, values[j]);
    }
    // first plan within the tie tolerance of the minimum, in lex order
    for (std::size_t j = 0; j < universe.size(); ++j) {
        if (values[j] <= best + kTieTol) {
            return DeterministicResult{universe[j], values[j]};
        }
    }
    throw NumericalError("enumeration found no plan");  // unreachable
}

}  // namespace drni
