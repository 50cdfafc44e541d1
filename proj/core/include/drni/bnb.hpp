#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "drni/common.hpp"
#include "drni/graph.hpp"
#include "drni/master.hpp"
#include "drni/risk.hpp"

namespace drni {

struct BnbConfig {
    long max_nodes = 100000;
    double time_limit_s = kInfinity;
    int children = 2;  // sub-intervals per branching; 2 uses the 0.2/0.8 split rule
    int column_cap = 500;
    SolverConfig solver;
    std::ostream* trace = nullptr;  // per-node progress stream
    // invoked once per processed node with (box, lower bound, upper bound,
    // incumbent after the update); used by bound-audit tests
    std::function<void(const IntervalBox&, double, double, double)> node_hook;
};

struct CoordinateDescentResult {
    double value = 0.0;        // upper bound attained (u-fixed evaluation)
    double zeta = 0.0;         // threshold attaining the bound, inside the box
    std::vector<double> u;     // final weights over the given support
    int rounds = 0;
};

/// Alternating minimization restricted to the given support rows: fix u and
/// minimize over the threshold inside the box, then fix the threshold and
/// reoptimize u; stop when the second step no longer improves the first by a
/// relative eps. Every iterate is feasible, so the result upper-bounds the
/// box value.
CoordinateDescentResult coordinate_descent(const std::vector<std::vector<double>>& support_flows,
                                           const std::vector<double>& u_start,
                                           const IntervalBox& box,
                                           const BudgetedAmbiguitySet& amb, const RiskSpec& risk,
                                           double eps, const SolverConfig& cfg = {});

struct SolverStats {
    long nodes = 0;
    long columns = 0;
    long cg_iterations = 0;
    double time_ms = 0.0;
    std::string flag = "optimal";
};

struct SolverResult {
    RandomizedStrategy strategy;
    double value = 0.0;           // exact worst-case CVaR of the strategy
    double gap = 0.0;             // certified relative optimality gap
    double zeta = 0.0;            // minimizing threshold of the final evaluation
    std::vector<double> worst_q;  // maximizing distribution for the strategy
    SolverStats stats;
};

/// Global solve by spatial branch and bound on the threshold interval:
/// nodes ordered by lower bound, column-generation lower bounds, coordinate
/// descent upper bounds, split point at 0.2/0.8 of the box depending on which
/// side the incumbent threshold falls. After the node loop the strategy is
/// recovered from the pool at the incumbent threshold (with a certifying
/// pricing pass) and re-evaluated exactly.
SolverResult spatial_bnb(const Network& net, const ScenarioSet& scenarios,
                         const BudgetedAmbiguitySet& amb, const RiskSpec& risk, int budget,
                         double eps, const BnbConfig& config = {});

}  // namespace drni
