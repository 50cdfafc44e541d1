#pragma once

#include <vector>

#include "drni/common.hpp"
#include "drni/graph.hpp"
#include "drni/risk.hpp"

namespace drni {

struct DeterministicResult {
    InterdictionPlan plan;
    double value = 0.0;  // worst-case CVaR of the single plan
};

/// All plans with at most `budget` arcs, in lexicographic order on the sorted
/// arc sets (the empty plan first, a prefix before its extensions). Refuses
/// past the cap.
std::vector<InterdictionPlan> enumerate_plans(int arc_count, int budget, long cap = 100000);

/// Optimal single interdiction plan via the plan-indexed MILP: one binary per
/// plan in the universe, the bilinear threshold term linearized with the
/// big-M zeta_bar. Ties resolve to the lexicographically smallest arc set by
/// a second solve that minimizes the plan index among near-optimal plans.
DeterministicResult solve_deterministic_milp(const Network& net, const ScenarioSet& scenarios,
                                             const BudgetedAmbiguitySet& amb, const RiskSpec& risk,
                                             int budget,
                                             const std::vector<InterdictionPlan>& universe,
                                             const SolverConfig& cfg = {});

/// Convenience overload that enumerates the universe first; refuses when the
/// MILP would carry more than `universe_cap` binaries.
DeterministicResult solve_deterministic_milp(const Network& net, const ScenarioSet& scenarios,
                                             const BudgetedAmbiguitySet& amb, const RiskSpec& risk,
                                             int budget, long universe_cap = 2000,
                                             const SolverConfig& cfg = {});

/// Brute force: minimum worst-case CVaR over all feasible plans, same tie
/// rule (lexicographic order makes the first near-optimal hit the winner).
DeterministicResult solve_deterministic_enumerate(const Network& net, const ScenarioSet& scenarios,
                                                  const BudgetedAmbiguitySet& amb,
                                                  const RiskSpec& risk, int budget,
                                                  long cap = 100000, const SolverConfig& cfg = {});

}  // namespace drni
