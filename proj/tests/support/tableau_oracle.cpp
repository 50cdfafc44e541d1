#include "support/tableau_oracle.hpp"

#include <cmath>
#include <limits>

namespace drni::oracles {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct StandardForm {
    // minimize c^T p subject to A p (sense) b, p >= 0
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<RowSense> sense;
    std::vector<double> cost;
    double cost_shift = 0.0;
    // mapping back: model var j = shift[j] + sign[j] * p[pos[j]] (+ extra split column)
    std::vector<double> shift, sign;
    std::vector<int> pos, neg;  // neg >= 0 only for free (split) variables
};

StandardForm standardize(const LinearModel& model) {
    StandardForm sf;
    const int n = model.num_variables();
    sf.shift.assign(n, 0.0);
    sf.sign.assign(n, 1.0);
    sf.pos.assign(n, -1);
    sf.neg.assign(n, -1);

    int cols = 0;
    for (int j = 0; j < n; ++j) {
        const auto& v = model.variable(j);
        if (std::isfinite(v.lb)) {
            sf.shift[j] = v.lb;
            sf.sign[j] = 1.0;
            sf.pos[j] = cols++;
        } else if (std::isfinite(v.ub)) {
            sf.shift[j] = v.ub;
            sf.sign[j] = -1.0;
            sf.pos[j] = cols++;
        } else {
            sf.pos[j] = cols++;
            sf.neg[j] = cols++;
        }
    }
    sf.cost.assign(cols, 0.0);
    for (int j = 0; j < n; ++j) {
        const double c = model.variable(j).obj;
        sf.cost_shift += c * sf.shift[j];
        sf.cost[sf.pos[j]] += c * sf.sign[j];
        if (sf.neg[j] >= 0) sf.cost[sf.neg[j]] -= c;
    }

    auto blank_row = [&] { return std::vector<double>(cols, 0.0); };
    for (int i = 0; i < model.num_constraints(); ++i) {
        const auto& row = model.constraint(i);
        auto r = blank_row();
        double b = row.rhs;
        for (const auto& [j, a] : row.coeffs) {
            b -= a * sf.shift[j];
            r[sf.pos[j]] += a * sf.sign[j];
            if (sf.neg[j] >= 0) r[sf.neg[j]] -= a;
        }
        sf.rows.push_back(std::move(r));
        sf.rhs.push_back(b);
        sf.sense.push_back(row.sense);
    }
    // finite upper bounds (on originally-lower-bounded vars) become rows
    for (int j = 0; j < n; ++j) {
        const auto& v = model.variable(j);
        if (std::isfinite(v.lb) && std::isfinite(v.ub)) {
            auto r = blank_row();
            r[sf.pos[j]] = 1.0;
            sf.rows.push_back(std::move(r));
            sf.rhs.push_back(v.ub - v.lb);
            sf.sense.push_back(RowSense::LessEqual);
        } else if (!std::isfinite(v.lb) && std::isfinite(v.ub)) {
            // x = ub - p, p >= 0 already enforces x <= ub
        }
    }
    return sf;
}

}  // namespace

TableauResult tableau_solve(const LinearModel& model) {
    StandardForm sf = standardize(model);
    const int m = static_cast<int>(sf.rows.size());
    int n = static_cast<int>(sf.cost.size());

    // normalize rhs >= 0
    for (int i = 0; i < m; ++i) {
        if (sf.rhs[i] < 0.0) {
            for (double& a : sf.rows[i]) a = -a;
            sf.rhs[i] = -sf.rhs[i];
            if (sf.sense[i] == RowSense::LessEqual) sf.sense[i] = RowSense::GreaterEqual;
            else if (sf.sense[i] == RowSense::GreaterEqual) sf.sense[i] = RowSense::LessEqual;
        }
    }

    // append slack/surplus and artificial columns
    std::vector<int> basis(m, -1);
    std::vector<int> artificial;
    std::vector<std::vector<double>> T(m);
    for (int i = 0; i < m; ++i) T[i] = sf.rows[i];
    auto append_col = [&](int row, double val) {
        for (int i = 0; i < m; ++i) T[i].push_back(i == row ? val : 0.0);
        return n++;
    };
    for (int i = 0; i < m; ++i) {
        if (sf.sense[i] == RowSense::LessEqual) {
            basis[i] = append_col(i, 1.0);
        } else if (sf.sense[i] == RowSense::GreaterEqual) {
            append_col(i, -1.0);
            basis[i] = append_col(i, 1.0);
            artificial.push_back(basis[i]);
        } else {
            basis[i] = append_col(i, 1.0);
            artificial.push_back(basis[i]);
        }
    }

    std::vector<double> b = sf.rhs;
    auto pivot = [&](int pr, int pc) {
        const double piv = T[pr][pc];
        for (int j = 0; j < n; ++j) T[pr][j] /= piv;
        b[pr] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == pr || std::abs(T[i][pc]) < 1e-14) continue;
            const double f = T[i][pc];
            for (int j = 0; j < n; ++j) T[i][j] -= f * T[pr][j];
            b[i] -= f * b[pr];
        }
        basis[pr] = pc;
    };

    auto run_phase = [&](const std::vector<double>& cost) -> bool {
        for (long iter = 0; iter < 200000; ++iter) {
            // reduced costs from scratch (dense, Bland's rule)
            int enter = -1;
            for (int j = 0; j < n && enter < 0; ++j) {
                double d = cost[j];
                for (int i = 0; i < m; ++i) d -= cost[basis[i]] * T[i][j];
                if (d < -kEps) enter = j;
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = kInf;
            for (int i = 0; i < m; ++i) {
                if (T[i][enter] > kEps) {
                    const double ratio = b[i] / T[i][enter];
                    if (ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
        return false;
    };

    TableauResult out;
    if (!artificial.empty()) {
        std::vector<double> c1(n, 0.0);
        for (int a : artificial) c1[a] = 1.0;
        if (!run_phase(c1)) {
            out.status = SolveStatus::Unbounded;  // cannot happen in phase 1
            return out;
        }
        double infeas = 0.0;
        for (int i = 0; i < m; ++i)
            for (int a : artificial)
                if (basis[i] == a) infeas += b[i];
        if (infeas > 1e-7) {
            out.status = SolveStatus::Infeasible;
            return out;
        }
    }
    std::vector<double> c2(n, 0.0);
    for (std::size_t j = 0; j < sf.cost.size(); ++j) c2[j] = sf.cost[j];
    // keep artificials out of the running
    for (int a : artificial) c2[a] = 1e9;
    if (!run_phase(c2)) {
        out.status = SolveStatus::Unbounded;
        return out;
    }

    std::vector<double> p(n, 0.0);
    for (int i = 0; i < m; ++i) p[basis[i]] = b[i];
    out.primal.assign(model.num_variables(), 0.0);
    for (int j = 0; j < model.num_variables(); ++j) {
        double x = sf.shift[j] + sf.sign[j] * p[sf.pos[j]];
        if (sf.neg[j] >= 0) x -= p[sf.neg[j]];
        out.primal[j] = x;
    }
    out.objective = 0.0;
    for (int j = 0; j < model.num_variables(); ++j)
        out.objective += model.variable(j).obj * out.primal[j];
    out.status = SolveStatus::Optimal;
    return out;
}

}  // namespace drni::oracles
