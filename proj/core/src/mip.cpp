#include "drni/lp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace drni {

namespace {

struct MipNode {
    double bound;
    long id;
    std::vector<double> lb, ub;
    bool operator<(const MipNode& other) const {
        if (bound != other.bound) return bound > other.bound;  // min-heap on bound
        return id > other.id;                                  // FIFO on ties
    }
};

}  // namespace

MipSolution solve_mip(const LinearModel& model, const std::vector<int>& binaries,
                      const SolverConfig& cfg) {
    for (int j : binaries) {
        require(j >= 0 && j < model.num_variables(), "binary index out of range");
        const auto& v = model.variable(j);
        require(v.lb >= -cfg.integrality_tol && v.ub <= 1.0 + cfg.integrality_tol,
                "binary variable '" + v.name + "' must have bounds within [0,1]");
    }

    MipSolution out;
    std::vector<double> lb0(model.num_variables()), ub0(model.num_variables());
    for (int j = 0; j < model.num_variables(); ++j) {
        lb0[j] = model.variable(j).lb;
        ub0[j] = model.variable(j).ub;
    }

    std::priority_queue<MipNode> open;
    long next_id = 0;

    const LpSolution root = solve_lp_with_bounds(model, lb0, ub0, cfg);
    if (root.status != SolveStatus::Optimal) {
        // binaries are bounded, so an unbounded relaxation ray lives in the
        // continuous variables and carries over to the integer problem
        out.status = root.status;
        return out;
    }

    bool have_incumbent = false;
    double incumbent = kInfinity;
    std::vector<double> best_primal;

    auto process = [&](const std::vector<double>& lb, const std::vector<double>& ub,
                       const LpSolution& sol) {
        if (sol.status != SolveStatus::Optimal) return;  // infeasible node closes
        if (have_incumbent &&
            sol.objective >= incumbent - cfg.mip_gap * std::max(1.0, std::abs(incumbent)))
            return;
        // most-fractional branching, ties to the lowest index
        int branch = -1;
        double best_frac = cfg.integrality_tol;
        for (int j : binaries) {
            const double x = sol.primal[j];
            const double frac = std::min(std::abs(x), std::abs(1.0 - x));
            if (frac > best_frac) {
                best_frac = frac;
                branch = j;
            }
        }
        if (branch < 0) {
            if (!have_incumbent || sol.objective < incumbent - 1e-12) {
                have_incumbent = true;
                incumbent = sol.objective;
                best_primal = sol.primal;
                for (int j : binaries) best_primal[j] = std::round(best_primal[j]);
            }
            return;
        }
        MipNode down{sol.objective, next_id++, lb, ub};
        down.lb[branch] = 0.0;
        down.ub[branch] = 0.0;
        open.push(std::move(down));
        MipNode up{sol.objective, next_id++, lb, ub};
        up.lb[branch] = 1.0;
        up.ub[branch] = 1.0;
        open.push(std::move(up));
    };

    process(lb0, ub0, root);
    out.nodes = 1;

    double frontier_bound = root.objective;
    bool frontier_open = false;
    while (!open.empty()) {
        MipNode node = open.top();
        open.pop();
        frontier_bound = node.bound;
        if (have_incumbent &&
            (incumbent - node.bound) / std::max(1.0, std::abs(incumbent)) <= cfg.mip_gap) {
            frontier_open = true;
            break;
        }
        if (++out.nodes > cfg.max_mip_nodes)
            throw CapExceeded("branch-and-bound node limit exceeded");
        const LpSolution sol = solve_lp_with_bounds(model, node.lb, node.ub, cfg);
        process(node.lb, node.ub, sol);
    }

    if (!have_incumbent) {
        out.status = SolveStatus::Infeasible;
        return out;
    }
    out.status = SolveStatus::Optimal;
    out.objective = incumbent;
    out.lower_bound = frontier_open ? std::min(incumbent, frontier_bound) : incumbent;
    out.gap = std::max(0.0, (incumbent - out.lower_bound) / std::max(1.0, std::abs(incumbent)));
    out.primal = std::move(best_primal);
    return out;
}

}  // namespace drni
