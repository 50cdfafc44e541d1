#pragma once

#include <iosfwd>
#include <vector>

#include "drni/common.hpp"
#include "drni/graph.hpp"
#include "drni/lp.hpp"
#include "drni/risk.hpp"

namespace drni {

/// Threshold interval handled by one branch-and-bound node.
struct IntervalBox {
    double zeta_lb = 0.0;
    double zeta_ub = 0.0;
    void validate() const {
        require(zeta_lb >= 0.0 && zeta_lb <= zeta_ub, "empty or negative threshold interval");
    }
    double width() const { return zeta_ub - zeta_lb; }
};

/// Growing set of interdiction plans with their per-scenario max-flow values.
/// Always contains the empty plan at index 0. Shared across all boxes: a plan
/// is a valid column everywhere, only the McCormick rows depend on the box.
class ColumnPool {
public:
    static ColumnPool initial(const Network& net, const ScenarioSet& scenarios, int budget);

    /// Adds a plan (computing its flow row) unless an identical plan exists;
    /// returns the plan's pool index either way.
    int add(const InterdictionPlan& plan, const Network& net, const ScenarioSet& scenarios);
    bool contains(const InterdictionPlan& plan) const;

    int size() const { return static_cast<int>(plans_.size()); }
    const std::vector<InterdictionPlan>& plans() const { return plans_; }
    const std::vector<std::vector<double>>& flows() const { return flows_; }

private:
    std::vector<InterdictionPlan> plans_;
    std::vector<std::vector<double>> flows_;  // flows_[i][k]
};

struct MasterDuals {
    std::vector<double> phi;  // per-scenario epigraph rows, nonnegative
    double p = 0.0;           // strategy normalization row
    double pi = 0.0;          // eta-sum row
};

struct MasterSolution {
    double objective = 0.0;
    std::vector<double> u;    // by pool index
    std::vector<double> eta;  // by pool index
    double zeta = 0.0;
    MasterDuals duals;
    std::vector<double> w, wminus, beta;
    double chi = 0.0;
    std::vector<std::vector<double>> delta;  // tail excess, by pool index x scenario

    std::vector<int> support(double tol = 1e-9) const;
};

/// The box-relaxed restricted master LP: the robust counterpart with the
/// bilinear eta = u * zeta replaced by its McCormick envelopes over the box
/// plus the eta-sum tightening row. Pool plans get explicit columns; all
/// other plans collapse to the zeta bounds. Row names key the dual lookup:
/// epi_k (epigraph), usum (sum u = 1), etasum (sum eta = zeta), devp_k/devm_k
/// (deviation envelope), mc_*_i (McCormick), del_i_k (tail excess).
LinearModel build_master(const ColumnPool& pool, const IntervalBox& box,
                         const ScenarioSet& scenarios, const BudgetedAmbiguitySet& amb,
                         const RiskSpec& risk);

/// Solves the restricted master and unpacks primal values and the duals
/// needed by pricing.
MasterSolution solve_master(const ColumnPool& pool, const IntervalBox& box,
                            const ScenarioSet& scenarios, const BudgetedAmbiguitySet& amb,
                            const RiskSpec& risk, const SolverConfig& cfg = {});

struct PricingResult {
    double value = 0.0;  // least reduced cost over all feasible plans
    InterdictionPlan plan;
};

/// Exact pricing MILP: minimizes the reduced cost of a plan column using the
/// min-cut dual description of the flow value, with products of plan bits and
/// cut variables linearized. A nonnegative value certifies the master is
/// optimal over all plans.
PricingResult price(const MasterDuals& duals, const IntervalBox& box, const Network& net,
                    const ScenarioSet& scenarios, int budget, const RiskSpec& risk,
                    const SolverConfig& cfg = {});

/// Same contract by exhaustive enumeration (the cross-check oracle): for each
/// feasible plan the inner minimization over the threshold is solved in
/// closed form by scanning the sorted flow breakpoints. Ties break on the
/// lexicographically smallest arc set. Refuses when the plan count exceeds
/// the cap.
PricingResult price_enumerate(const MasterDuals& duals, const IntervalBox& box, const Network& net,
                              const ScenarioSet& scenarios, int budget, const RiskSpec& risk,
                              long enumeration_cap = 100000, const SolverConfig& cfg = {});

struct CgResult {
    double lower_bound = 0.0;  // valid lower bound for the box even when capped
    MasterSolution master;
    int iterations = 0;
    bool cap_reached = false;
    double last_pricing_value = 0.0;
};

/// Column generation: solve master, price, add the violating plan, repeat.
/// The pool persists across calls (warm start across branch-and-bound
/// nodes). When the column cap is hit the returned bound is the master value
/// adjusted by the last pricing value, which stays a valid lower bound.
CgResult column_generation(const IntervalBox& box, const Network& net,
                           const ScenarioSet& scenarios, const BudgetedAmbiguitySet& amb,
                           const RiskSpec& risk, int budget, ColumnPool& pool,
                           const SolverConfig& cfg = {}, int column_cap = 500,
                           std::ostream* trace = nullptr);

/// Number of plans with at most `budget` arcs out of `arc_count`; refuses
/// past the cap (used by the enumeration-based routines).
long count_plans(int arc_count, int budget, long cap);

}  // namespace drni
