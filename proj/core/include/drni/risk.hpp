#pragma once

#include <vector>

#include "drni/common.hpp"
#include "drni/graph.hpp"

namespace drni {

/// Distribution ambiguity around a reference q_hat: q = q_hat + diag(q_bar) z
/// with |z_k| <= 1 componentwise and sum |z_k| <= gamma, intersected with the
/// probability simplex.
struct BudgetedAmbiguitySet {
    std::vector<double> q_hat;
    std::vector<double> q_bar;
    double gamma = 0.0;

    static BudgetedAmbiguitySet uniform(int k, double gamma, double deviation = 1.0);
    void validate(int scenario_count) const;
    bool contains(const std::vector<double>& q, double tol = 1e-9) const;
};

struct RandomizedStrategy {
    std::vector<InterdictionPlan> support;
    std::vector<double> probs;

    static RandomizedStrategy point_mass(InterdictionPlan plan);
    void validate(int arc_count) const;
};

struct RiskSpec {
    double alpha = 0.0;  // risk level in [0, 1)
    void validate() const { require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0,1)"); }
};

/// CVaR of a finite discrete distribution by sorted-tail summation; equals
/// inf_zeta zeta + E[(value - zeta)^+]/(1-alpha).
double cvar_discrete(const std::vector<double>& values, const std::vector<double>& probs,
                     double alpha);

struct WorstCaseCvar {
    double value = 0.0;
    std::vector<double> worst_q;  // a maximizing distribution, from the epigraph duals
    double zeta = 0.0;            // minimizing CVaR threshold
};

/// Worst-case CVaR of a fixed randomized strategy over the budgeted set: the
/// robust-counterpart LP with u fixed. Plans with probability below 1e-9 are
/// dropped (their tail-excess rows contribute nothing).
WorstCaseCvar worst_case_cvar(const Network& net, const ScenarioSet& scenarios,
                              const BudgetedAmbiguitySet& amb, const RandomizedStrategy& strategy,
                              const RiskSpec& risk, const SolverConfig& cfg = {});

/// Same solve on precomputed flow rows (flows[i][k] for support plan i), with
/// the threshold restricted to [zeta_lo, zeta_hi]. This is the kernel shared
/// by the public evaluation, the comparison objective and coordinate descent.
WorstCaseCvar worst_case_cvar_flows(const std::vector<std::vector<double>>& flows,
                                    const std::vector<double>& u, const BudgetedAmbiguitySet& amb,
                                    const RiskSpec& risk, double zeta_lo, double zeta_hi,
                                    const SolverConfig& cfg = {});

/// Best strategy weights at a fixed threshold: the robust counterpart with
/// zeta frozen, minimized over distributions on the given flow rows.
struct FixedThresholdSolution {
    double value = 0.0;
    std::vector<double> u;
};
FixedThresholdSolution best_strategy_at_threshold(const std::vector<std::vector<double>>& flows,
                                                  double zeta, const BudgetedAmbiguitySet& amb,
                                                  const RiskSpec& risk,
                                                  const SolverConfig& cfg = {});

/// Worst-case CVaR of the per-scenario *expected* flow under the strategy
/// (risk applied after averaging over the interdictor's own randomization).
double loizou_objective(const Network& net, const ScenarioSet& scenarios,
                        const BudgetedAmbiguitySet& amb, const RandomizedStrategy& strategy,
                        const RiskSpec& risk, const SolverConfig& cfg = {});

enum class Dominance { ADominates, BDominates, Equal, Incomparable };

/// First-order stochastic comparison of the flow distributions induced by two
/// strategies under a fixed scenario distribution q. "A dominates" means A's
/// survival function P(f >= t) is everywhere <= B's and strictly below it
/// somewhere (lower flow is better for the interdictor).
Dominance dominance_check(const Network& net, const ScenarioSet& scenarios,
                          const std::vector<double>& q, const RandomizedStrategy& a,
                          const RandomizedStrategy& b);

}  // namespace drni
