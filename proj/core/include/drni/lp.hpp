#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drni/common.hpp"

namespace drni {

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// A minimization LP/MIP container. Variables carry bounds and objective
/// coefficients; constraints carry a sparse row, a sense and a right-hand
/// side. Constraint names are unique and key the dual lookup.
///
/// Dual sign convention (minimization): the reported dual y_i is the shadow
/// price d(objective)/d(rhs_i), i.e. y_i <= 0 for LessEqual rows, y_i >= 0
/// for GreaterEqual rows, free for Equal rows. Equality duals share this
/// <=-form convention: an equality row split into a <= pair would report the
/// net multiplier -y_i on the <= side.
class LinearModel {
public:
    struct Variable {
        std::string name;
        double lb;
        double ub;
        double obj;
    };
    struct Constraint {
        std::string name;
        std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
        RowSense sense;
        double rhs;
    };

    int add_variable(std::string name, double lb, double ub, double obj);
    int add_constraint(std::string name, std::vector<std::pair<int, double>> coeffs,
                       RowSense sense, double rhs);

    int num_variables() const { return static_cast<int>(vars_.size()); }
    int num_constraints() const { return static_cast<int>(rows_.size()); }
    const Variable& variable(int j) const { return vars_[j]; }
    const Constraint& constraint(int i) const { return rows_[i]; }
    int row_index(const std::string& name) const;

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return rows_; }

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    std::unordered_map<std::string, int> row_names_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    SolveStatus status = SolveStatus::Optimal;
    double objective = 0.0;
    std::vector<double> primal;        // by variable index
    std::vector<double> row_duals;     // by constraint index, sign convention above
    std::vector<double> reduced_costs; // by variable index
    std::vector<double> ray;           // unbounded: an improving feasible direction

    double dual(const LinearModel& model, const std::string& row_name) const;
};

/// Bounded-variable revised simplex (two-phase, Dantzig pricing with Bland's
/// rule fallback after cfg.degenerate_pivot_limit consecutive degenerate
/// pivots). Deterministic: ties break on the lowest variable index.
LpSolution solve_lp(const LinearModel& model, const SolverConfig& cfg = {});

/// Same solve with per-call bound overrides (used by the MIP tree so node
/// fixings never mutate the shared model). Entries with NaN mean "keep".
LpSolution solve_lp_with_bounds(const LinearModel& model,
                                const std::vector<double>& lb_override,
                                const std::vector<double>& ub_override,
                                const SolverConfig& cfg = {});

struct LpCheck {
    double primal_infeasibility = 0.0;  // max constraint/bound violation
    double dual_infeasibility = 0.0;    // max wrong-signed dual / reduced cost
    double complementarity = 0.0;       // max |slack * dual| style residual
    double duality_gap = 0.0;           // |primal obj - dual obj| / (1 + |primal obj|)
};

/// Independent feasibility/duality audit of an Optimal solution; used as the
/// weak/strong-duality test hook.
LpCheck check_lp_solution(const LinearModel& model, const LpSolution& sol);

/// Dumps the model in CPLEX-style LP interchange format (names preserved) for
/// cross-checking against external solvers.
void write_lp_format(const LinearModel& model, std::ostream& out);

struct MipSolution {
    SolveStatus status = SolveStatus::Optimal;
    double objective = 0.0;          // incumbent objective
    double lower_bound = 0.0;        // proven bound
    double gap = 0.0;                // (upper-lower)/max(1,|upper|)
    std::vector<double> primal;
    long nodes = 0;
};

/// LP-relaxation branch and bound over the given binary variables
/// (most-fractional branching, best-bound node order). Binaries must be
/// declared with bounds inside [0,1].
MipSolution solve_mip(const LinearModel& model, const std::vector<int>& binaries,
                      const SolverConfig& cfg = {});

}  // namespace drni
