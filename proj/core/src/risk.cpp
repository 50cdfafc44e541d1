#include "drni/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "drni/lp.hpp"

namespace drni {

namespace {

constexpr double kProbTol = 1e-9;
constexpr double kSupportDrop = 1e-9;

void validate_distribution(const std::vector<double>& probs) {
    double sum = 0.0;
    for (double p : probs) {
        require(p >= -kProbTol, "probabilities must be nonnegative");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= kProbTol * std::max<double>(1.0, probs.size()),
            "probabilities must sum to one");
}

}  // namespace

BudgetedAmbiguitySet BudgetedAmbiguitySet::uniform(int k, double gamma, double deviation) {
    BudgetedAmbiguitySet amb;
    amb.q_hat.assign(k, 1.0 / k);
    amb.q_bar.assign(k, deviation);
    amb.gamma = gamma;
    return amb;
}

void BudgetedAmbiguitySet::validate(int scenario_count) const {
    require(static_cast<int>(q_hat.size()) == scenario_count &&
                static_cast<int>(q_bar.size()) == scenario_count,
            "ambiguity set does not match the scenario count");
    validate_distribution(q_hat);
    for (double v : q_bar) require(v >= 0.0, "deviation weights must be nonnegative");
    // gamma beyond |K| saturates: the perturbation set equals the gamma = |K| one
    require(gamma >= 0.0, "perturbation budget must be nonnegative");
}

bool BudgetedAmbiguitySet::contains(const std::vector<double>& q, double tol) const {
    if (q.size() != q_hat.size()) return false;
    double sum = 0.0, l1 = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (q[k] < -tol) return false;
        sum += q[k];
        const double dev = q[k] - q_hat[k];
        if (q_bar[k] <= tol) {
            if (std::abs(dev) > tol) return false;
        } else {
            const double z = dev / q_bar[k];
            if (std::abs(z) > 1.0 + tol) return false;
            l1 += std::abs(z);
        }
    }
    return std::abs(sum - 1.0) <= tol && l1 <= gamma + tol;
}

RandomizedStrategy RandomizedStrategy::point_mass(InterdictionPlan plan) {
    RandomizedStrategy s;
    s.support.push_back(std::move(plan));
    s.probs.push_back(1.0);
    return s;
}

void RandomizedStrategy::validate(int arc_count) const {
    require(support.size() == probs.size(), "strategy support/probability size mismatch");
    require(!support.empty(), "strategy needs a nonempty support");
    validate_distribution(probs);
    for (std::size_t i = 0; i < support.size(); ++i) {
        require(static_cast<int>(support[i].removed.size()) == arc_count,
                "support plan does not match the arc count");
        require(support[i].cardinality() <= support[i].budget,
                "support plan exceeds its budget");
        for (std::size_t j = i + 1; j < support.size(); ++j)
            require(!(support[i] == support[j]), "support plans must be distinct");
    }
}

double cvar_discrete(const std::vector<double>& values, const std::vector<double>& probs,
                     double alpha) {
    require(values.size() == probs.size() && !values.empty(),
            "values/probabilities size mismatch");
    require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0,1)");
    validate_distribution(probs);

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    const double tail = 1.0 - alpha;
    double mass = 0.0, acc = 0.0;
    for (std::size_t idx : order) {
        if (mass >= tail - 1e-15) break;
        const double take = std::min(std::max(probs[idx], 0.0), tail - mass);
        if (take <= 0.0) continue;  // zero-probability atoms may sort anywhere
        acc += take * values[idx];
        mass += take;
    }
    return acc / tail;
}

WorstCaseCvar worst_case_cvar_flows(const std::vector<std::vector<double>>& flows,
                                    const std::vector<double>& u, const BudgetedAmbiguitySet& amb,
                                    const RiskSpec& risk, double zeta_lo, double zeta_hi,
                                    const SolverConfig& cfg) {
    require(flows.size() == u.size() && !flows.empty(), "flow rows do not match strategy weights");
    const int K = static_cast<int>(flows.front().size());
    amb.validate(K);
    risk.validate();
    require(zeta_lo <= zeta_hi && zeta_lo >= 0.0, "invalid threshold interval");

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > kSupportDrop) kept.push_back(i);
    require(!kept.empty(), "strategy has no support above the drop threshold");

    LinearModel lp;
    const int t = lp.add_variable("t", -kInfinity, kInfinity, 1.0);
    const int zeta = lp.add_variable("zeta", zeta_lo, zeta_hi, 0.0);
    std::vector<int> w(K), wm(K), beta(K);
    for (int k = 0; k < K; ++k) {
        w[k] = lp.add_variable("w_" + std::to_string(k), 0.0, kInfinity, 0.0);
        wm[k] = lp.add_variable("wm_" + std::to_string(k), 0.0, kInfinity, 0.0);
        beta[k] = lp.add_variable("beta_" + std::to_string(k), -kInfinity, kInfinity, 0.0);
    }
    const int chi = lp.add_variable("chi", 0.0, kInfinity, 0.0);
    std::vector<std::vector<int>> delta(kept.size(), std::vector<int>(K));
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (int k = 0; k < K; ++k)
            delta[i][k] = lp.add_variable(
                "delta_" + std::to_string(i) + "_" + std::to_string(k), 0.0, kInfinity, 0.0);

    const double inv_tail = 1.0 / (1.0 - risk.alpha);
    for (int k = 0; k < K; ++k) {
        std::vector<std::pair<int, double>> row{{zeta, 1.0}, {chi, amb.gamma}, {t, -1.0}};
        for (int kk = 0; kk < K; ++kk) {
            row.emplace_back(w[kk], 1.0);
            row.emplace_back(wm[kk], 1.0);
            row.emplace_back(beta[kk], amb.q_hat[kk]);
        }
        row.emplace_back(beta[k], -1.0);
        for (std::size_t i = 0; i < kept.size(); ++i) row.emplace_back(delta[i][k], inv_tail);
        lp.add_constraint("epi_" + std::to_string(k), std::move(row), RowSense::LessEqual, 0.0);
    }
    for (int k = 0; k < K; ++k) {
        lp.add_constraint("chip_" + std::to_string(k),
                          {{beta[k], amb.q_bar[k]}, {w[k], -1.0}, {chi, -1.0}},
                          RowSense::LessEqual, 0.0);
        lp.add_constraint("chim_" + std::to_string(k),
                          {{beta[k], -amb.q_bar[k]}, {wm[k], -1.0}, {chi, -1.0}},
                          RowSense::LessEqual, 0.0);
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double ui = u[kept[i]];
        const auto& frow = flows[kept[i]];
        for (int k = 0; k < K; ++k) {
            // Delta_{l,k} >= u_l f_{l,k} - u_l zeta  (eta substituted as u zeta)
            lp.add_constraint("del_" + std::to_string(i) + "_" + std::to_string(k),
                              {{delta[i][k], -1.0}, {zeta, -ui}}, RowSense::LessEqual,
                              -ui * frow[k]);
        }
    }

    const LpSolution sol = solve_lp(lp, cfg);
    if (sol.status != SolveStatus::Optimal)
        throw NumericalError("worst-case CVaR evaluation did not solve to optimality");

    WorstCaseCvar out;
    out.value = sol.objective;
    out.zeta = sol.primal[zeta];
    out.worst_q.assign(K, 0.0);
    double qsum = 0.0;
    for (int k = 0; k < K; ++k) {
        out.worst_q[k] = std::max(0.0, -sol.dual(lp, "epi_" + std::to_string(k)));
        qsum += out.worst_q[k];
    }
    if (qsum > 0.0)
        for (double& v : out.worst_q) v /= qsum;
    return out;
}

WorstCaseCvar worst_case_cvar(const Network& net, const ScenarioSet& scenarios,
                              const BudgetedAmbiguitySet& amb, const RandomizedStrategy& strategy,
                              const RiskSpec& risk, const SolverConfig& cfg) {
    strategy.validate(net.arc_count());
    require(scenarios.count() > 0, "empty scenario set");
    std::vector<std::vector<double>> flows(strategy.support.size(),
                                           std::vector<double>(scenarios.count()));
    for (std::size_t i = 0; i < strategy.support.size(); ++i)
        for (int k = 0; k < scenarios.count(); ++k)
            flows[i][k] = max_flow(net, scenarios.capacities[k], strategy.support[i]).value;
    const double zbar = zeta_bar(net, scenarios);
    return worst_case_cvar_flows(flows, strategy.probs, amb, risk, 0.0, zbar, cfg);
}

FixedThresholdSolution best_strategy_at_threshold(const std::vector<std::vector<double>>& flows,
                                                  double zeta, const BudgetedAmbiguitySet& amb,
                                                  const RiskSpec& risk, const SolverConfig& cfg) {
    require(!flows.empty(), "need at least one flow row");
    const int K = static_cast<int>(flows.front().size());
    const int L = static_cast<int>(flows.size());
    amb.validate(K);
    risk.validate();

    LinearModel lp;
    const int t = lp.add_variable("t", -kInfinity, kInfinity, 1.0);
    std::vector<int> w(K), wm(K), beta(K), uvar(L);
    for (int k = 0; k < K; ++k) {
        w[k] = lp.add_variable("w_" + std::to_string(k), 0.0, kInfinity, 0.0);
        wm[k] = lp.add_variable("wm_" + std::to_string(k), 0.0, kInfinity, 0.0);
        beta[k] = lp.add_variable("beta_" + std::to_string(k), -kInfinity, kInfinity, 0.0);
    }
    const int chi = lp.add_variable("chi", 0.0, kInfinity, 0.0);
    for (int i = 0; i < L; ++i)
        uvar[i] = lp.add_variable("u_" + std::to_string(i), 0.0, kInfinity, 0.0);

    const double inv_tail = 1.0 / (1.0 - risk.alpha);
    for (int k = 0; k < K; ++k) {
        std::vector<std::pair<int, double>> row{{chi, amb.gamma}, {t, -1.0}};
        for (int kk = 0; kk < K; ++kk) {
            row.emplace_back(w[kk], 1.0);
            row.emplace_back(wm[kk], 1.0);
            row.emplace_back(beta[kk], amb.q_hat[kk]);
        }
        row.emplace_back(beta[k], -1.0);
        // Delta_{l,k} = u_l [f_{l,k} - zeta]^+ substituted in closed form
        for (int i = 0; i < L; ++i) {
            const double excess = std::max(flows[i][k] - zeta, 0.0);
            if (excess > 0.0) row.emplace_back(uvar[i], inv_tail * excess);
        }
        lp.add_constraint("epi_" + std::to_string(k), std::move(row), RowSense::LessEqual, -zeta);
    }
    for (int k = 0; k < K; ++k) {
        lp.add_constraint("chip_" + std::to_string(k),
                          {{beta[k], amb.q_bar[k]}, {w[k], -1.0}, {chi, -1.0}},
                          RowSense::LessEqual, 0.0);
        lp.add_constraint("chim_" + std::to_string(k),
                          {{beta[k], -amb.q_bar[k]}, {wm[k], -1.0}, {chi, -1.0}},
                          RowSense::LessEqual, 0.0);
    }
    std::vector<std::pair<int, double>> usum;
    for (int i = 0; i < L; ++i) usum.emplace_back(uvar[i], 1.0);
    lp.add_constraint("usum", std::move(usum), RowSense::Equal, 1.0);

    const LpSolution sol = solve_lp(lp, cfg);
    if (sol.status != SolveStatus::Optimal)
        throw NumericalError("fixed-threshold strategy LP did not solve to optimality");

    FixedThresholdSolution out;
    out.value = sol.objective;
    out.u.resize(L);
    for (int i = 0; i < L; ++i) out.u[i] = std::max(0.0, sol.primal[uvar[i]]);
    double s = std::accumulate(out.u.begin(), out.u.end(), 0.0);
    if (s > 0.0)
        for (double& v : out.u) v /= s;
    return out;
}

double loizou_objective(const Network& net, const ScenarioSet& scenarios,
                        const BudgetedAmbiguitySet& amb, const RandomizedStrategy& strategy,
                        const RiskSpec& risk, const SolverConfig& cfg) {
    strategy.validate(net.arc_count());
    require(scenarios.count() > 0, "empty scenario set");
    // per-scenario expected flow under the strategy, then one pseudo-plan
    std::vector<double> mean_flow(scenarios.count(), 0.0);
    for (std::size_t i = 0; i < strategy.support.size(); ++i) {
        if (strategy.probs[i] <= kSupportDrop) continue;
        for (int k = 0; k < scenarios.count(); ++k)
            mean_flow[k] +=
                strategy.probs[i] * max_flow(net, scenarios.capacities[k], strategy.support[i]).value;
    }
    const double zbar = zeta_bar(net, scenarios);
    return worst_case_cvar_flows({mean_flow}, {1.0}, amb, risk, 0.0, zbar, cfg).value;
}

Dominance dominance_check(const Network& net, const ScenarioSet& scenarios,
                          const std::vector<double>& q, const RandomizedStrategy& a,
                          const RandomizedStrategy& b) {
    a.validate(net.arc_count());
    b.validate(net.arc_count());
    require(static_cast<int>(q.size()) == scenarios.count(),
            "scenario distribution does not match the scenario count");
    validate_distribution(q);

    auto joint = [&](const RandomizedStrategy& s) {
        std::vector<std::pair<double, double>> dist;  // (flow value, probability)
        for (std::size_t i = 0; i < s.support.size(); ++i)
            for (int k = 0; k < scenarios.count(); ++k)
                dist.emplace_back(max_flow(net, scenarios.capacities[k], s.support[i]).value,
                                  s.probs[i] * q[k]);
        return dist;
    };
    const auto da = joint(a), db = joint(b);

    std::vector<double> points;
    for (const auto& [v, p] : da) points.push_back(v);
    for (const auto& [v, p] : db) points.push_back(v);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [](double x, double y) { return std::abs(x - y) <= 1e-9; }),
                 points.end());

    auto survival = [](const std::vector<std::pair<double, double>>& dist, double t) {
        double s = 0.0;
        for (const auto& [v, p] : dist)
            if (v >= t - 1e-9) s += p;
        return s;
    };

    bool a_below = false, b_below = false;
    for (double t : points) {
        const double sa = survival(da, t), sb = survival(db, t);
        if (sa < sb - 1e-9) a_below = true;
        if (sb < sa - 1e-9) b_below = true;
    }
    if (a_below && b_below) return Dominance::Incomparable;
    if (a_below) return Dominance::ADominates;
    if (b_below) return Dominance::BDominates;
    return Dominance::Equal;
}

}  // namespace drni
