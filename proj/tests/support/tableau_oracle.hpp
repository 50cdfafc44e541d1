#pragma once

#include <vector>

#include "drni/lp.hpp"

namespace drni::oracles {

struct TableauResult {
    SolveStatus status = SolveStatus::Optimal;
    double objective = 0.0;
    std::vector<double> primal;
};

/// Independent dense full-tableau two-phase simplex for small models. Shares
/// no code with the production kernel: bounds become explicit rows, free
/// variables split into differences, pivoting is Bland's rule on a dense
/// tableau.
TableauResult tableau_solve(const LinearModel& model);

}  // namespace drni::oracles
