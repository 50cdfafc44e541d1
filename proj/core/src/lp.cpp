#include "drni/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>

namespace drni {

int LinearModel::add_variable(std::string name, double lb, double ub, double obj) {
    require(!(lb > ub), "variable '" + name + "': lower bound exceeds upper bound");
    vars_.push_back({std::move(name), lb, ub, obj});
    return static_cast<int>(vars_.size()) - 1;
}

int LinearModel::add_constraint(std::string name, std::vector<std::pair<int, double>> coeffs,
                                RowSense sense, double rhs) {
    require(row_names_.find(name) == row_names_.end(), "duplicate constraint name '" + name + "'");
    // merge duplicate variable entries so the row is a well-defined sparse vector
    std::sort(coeffs.begin(), coeffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> merged;
    for (const auto& [j, v] : coeffs) {
        require(j >= 0 && j < num_variables(),
                "constraint '" + name + "' references undeclared variable");
        if (!merged.empty() && merged.back().first == j)
            merged.back().second += v;
        else
            merged.emplace_back(j, v);
    }
    const int idx = static_cast<int>(rows_.size());
    row_names_.emplace(name, idx);
    rows_.push_back({std::move(name), std::move(merged), sense, rhs});
    return idx;
}

int LinearModel::row_index(const std::string& name) const {
    auto it = row_names_.find(name);
    require(it != row_names_.end(), "unknown constraint name '" + name + "'");
    return it->second;
}

double LpSolution::dual(const LinearModel& model, const std::string& row_name) const {
    return row_duals.at(static_cast<std::size_t>(model.row_index(row_name)));
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-10;

enum class VarState : std::uint8_t { AtLower, AtUpper, NonbasicFree, Basic };

class Simplex {
public:
    Simplex(const LinearModel& model, const std::vector<double>* lb_override,
            const std::vector<double>* ub_override, const SolverConfig& cfg)
        : cfg_(cfg) {
        m_ = model.num_constraints();
        nstruct_ = model.num_variables();

        cols_.resize(nstruct_);
        cost_.assign(nstruct_, 0.0);
        lb_.assign(nstruct_, 0.0);
        ub_.assign(nstruct_, 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            const auto& v = model.variable(j);
            cost_[j] = v.obj;
            lb_[j] = lb_override ? (*lb_override)[j] : v.lb;
            ub_[j] = ub_override ? (*ub_override)[j] : v.ub;
            if (lb_[j] > ub_[j]) infeasible_bounds_ = true;
        }
        b_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const auto& row = model.constraint(i);
            b_[i] = row.rhs;
            for (const auto& [j, a] : row.coeffs) cols_[j].emplace_back(i, a);
        }
        // one slack per row; sense encoded through the slack bounds
        slack0_ = nstruct_;
        for (int i = 0; i < m_; ++i) {
            cols_.push_back({{i, 1.0}});
            cost_.push_back(0.0);
            switch (model.constraint(i).sense) {
                case RowSense::LessEqual: lb_.push_back(0.0); ub_.push_back(kInfinity); break;
                case RowSense::GreaterEqual: lb_.push_back(-kInfinity); ub_.push_back(0.0); break;
                case RowSense::Equal: lb_.push_back(0.0); ub_.push_back(0.0); break;
            }
        }
    }

    LpSolution solve() {
        LpSolution out;
        if (infeasible_bounds_) {
            out.status = SolveStatus::Infeasible;
            out.row_duals.assign(m_, 0.0);
            return out;
        }
        init_basis();
        if (!artificials_.empty()) {
            phase_one_ = true;
            const bool ok = iterate();
            if (!ok) throw NumericalError("phase-1 simplex reported an unbounded direction");
            if (phase_objective() > cfg_.feasibility_tol * (1.0 + rhs_scale())) {
                out.status = SolveStatus::Infeasible;
                extract_duals(out);
                return out;
            }
            for (int a : artificials_) { lb_[a] = 0.0; ub_[a] = 0.0; }
            phase_one_ = false;
            bland_ = false;
            degenerate_run_ = 0;
        }
        const bool ok = iterate();
        if (!ok) {
            out.status = SolveStatus::Unbounded;
            extract_primal(out);
            out.ray.assign(nstruct_, 0.0);
            if (ray_entering_ >= 0) {
                if (ray_entering_ < nstruct_) out.ray[ray_entering_] = ray_dir_;
                for (int r = 0; r < m_; ++r) {
                    const int bj = basis_[r];
                    if (bj < nstruct_) out.ray[bj] = -ray_dir_ * ray_w_[r];
                }
            }
            return out;
        }
        out.status = SolveStatus::Optimal;
        extract_primal(out);
        extract_duals(out);
        out.objective = 0.0;
        for (int j = 0; j < nstruct_; ++j) out.objective += cost_[j] * out.primal[j];
        return out;
    }

private:
    const SolverConfig& cfg_;
    int m_ = 0, nstruct_ = 0, slack0_ = 0;
    bool infeasible_bounds_ = false;
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> cost_, lb_, ub_, b_;

    std::vector<int> basis_;
    std::vector<VarState> state_;
    std::vector<double> value_;  // current value of every variable
    std::vector<int> artificials_;
    bool phase_one_ = false;
    bool bland_ = false;
    int degenerate_run_ = 0;
    int iterations_ = 0;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    std::vector<std::pair<int, Eigen::VectorXd>> etas_;

    int ray_entering_ = -1;
    double ray_dir_ = 0.0;
    Eigen::VectorXd ray_w_;

    int ntot() const { return static_cast<int>(cols_.size()); }
    bool fixed(int j) const { return lb_[j] == ub_[j]; }

    double rhs_scale() const {
        double s = 0.0;
        for (double v : b_) s = std::max(s, std::abs(v));
        return s;
    }

    double phase_cost(int j) const {
        if (!phase_one_) return cost_[j];
        if (j >= slack0_ + m_) return ub_[j] > 0.0 ? 1.0 : -1.0;  // artificial
        return 0.0;
    }

    double phase_objective() const {
        double obj = 0.0;
        for (int j = 0; j < ntot(); ++j) obj += phase_cost(j) * value_[j];
        return obj;
    }

    void init_basis() {
        state_.assign(ntot(), VarState::AtLower);
        value_.assign(ntot(), 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            if (std::isfinite(lb_[j])) { state_[j] = VarState::AtLower; value_[j] = lb_[j]; }
            else if (std::isfinite(ub_[j])) { state_[j] = VarState::AtUpper; value_[j] = ub_[j]; }
            else { state_[j] = VarState::NonbasicFree; value_[j] = 0.0; }
        }
        std::vector<double> residual(b_);
        for (int j = 0; j < nstruct_; ++j) {
            if (value_[j] == 0.0) continue;
            for (const auto& [i, a] : cols_[j]) residual[i] -= a * value_[j];
        }
        basis_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            const int s = slack0_ + i;
            const double r = residual[i];
            if (r >= lb_[s] - cfg_.feasibility_tol && r <= ub_[s] + cfg_.feasibility_tol) {
                basis_[i] = s;
                state_[s] = VarState::Basic;
                value_[s] = r;
            } else {
                // clamp the slack to its nearest bound and let an artificial carry the rest
                const double sv = std::clamp(r, lb_[s], ub_[s]);
                state_[s] = (sv == lb_[s]) ? VarState::AtLower : VarState::AtUpper;
                value_[s] = sv;
                const double av = r - sv;
                cols_.push_back({{i, 1.0}});
                cost_.push_back(0.0);
                // the artificial's phase-1 cost sign is read off its bounds
                if (av > 0.0) { lb_.push_back(0.0); ub_.push_back(kInfinity); }
                else { lb_.push_back(-kInfinity); ub_.push_back(0.0); }
                const int a = ntot() - 1;
                artificials_.push_back(a);
                basis_[i] = a;
                state_.push_back(VarState::Basic);
                value_.push_back(av);
            }
        }
        factorize();
    }

    void factorize() {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
        for (int r = 0; r < m_; ++r)
            for (const auto& [i, a] : cols_[basis_[r]]) B(i, r) = a;
        lu_.compute(B);
        etas_.clear();
        recompute_basics();
    }

    void recompute_basics() {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
        for (int i = 0; i < m_; ++i) rhs[i] = b_[i];
        for (int j = 0; j < ntot(); ++j) {
            if (state_[j] == VarState::Basic || value_[j] == 0.0) continue;
            for (const auto& [i, a] : cols_[j]) rhs[i] -= a * value_[j];
        }
        Eigen::VectorXd xb = ftran(rhs);
        for (int r = 0; r < m_; ++r) value_[basis_[r]] = xb[r];
    }

    Eigen::VectorXd ftran(const Eigen::VectorXd& v) const {
        Eigen::VectorXd y = lu_.solve(v);
        for (const auto& [r, w] : etas_) {
            const double yr = y[r] / w[r];
            y -= yr * w;
            y[r] = yr;
        }
        return y;
    }

    Eigen::VectorXd btran(const Eigen::VectorXd& c) const {
        Eigen::VectorXd u = c;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            const int r = it->first;
            const Eigen::VectorXd& w = it->second;
            u[r] = (u[r] - w.dot(u) + w[r] * u[r]) / w[r];
        }
        return lu_.transpose().solve(u);
    }

    Eigen::VectorXd column(int j) const {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
        for (const auto& [i, v] : cols_[j]) a[i] = v;
        return a;
    }

    Eigen::VectorXd basic_costs() const {
        Eigen::VectorXd cb(m_);
        for (int r = 0; r < m_; ++r) cb[r] = phase_cost(basis_[r]);
        return cb;
    }

    double reduced_cost(int j, const Eigen::VectorXd& y) const {
        double d = phase_cost(j);
        for (const auto& [i, a] : cols_[j]) d -= y[i] * a;
        return d;
    }

    // returns false when an unbounded improving direction is found
    bool iterate() {
        int confirm_rounds = 0;
        while (true) {
            if (++iterations_ > cfg_.max_simplex_iterations)
                throw NumericalError("simplex iteration limit exceeded (numerically unstable)");
            const Eigen::VectorXd y = btran(basic_costs());

            int enter = -1;
            double enter_dir = 0.0, best_viol = cfg_.optimality_tol;
            for (int j = 0; j < ntot(); ++j) {
                if (state_[j] == VarState::Basic || fixed(j)) continue;
                const double d = reduced_cost(j, y);
                double viol = 0.0, dir = 0.0;
                if (state_[j] == VarState::AtLower && d < -cfg_.optimality_tol) { viol = -d; dir = 1.0; }
                else if (state_[j] == VarState::AtUpper && d > cfg_.optimality_tol) { viol = d; dir = -1.0; }
                else if (state_[j] == VarState::NonbasicFree && std::abs(d) > cfg_.optimality_tol) {
                    viol = std::abs(d);
                    dir = d < 0.0 ? 1.0 : -1.0;
                }
                if (dir != 0.0) {
                    if (bland_) { enter = j; enter_dir = dir; break; }
                    if (viol > best_viol) { best_viol = viol; enter = j; enter_dir = dir; }
                }
            }

            if (enter < 0) {
                // confirm optimality on a fresh factorization before declaring victory
                if (!etas_.empty() || confirm_rounds == 0) {
                    factorize();
                    ++confirm_rounds;
                    if (confirm_rounds >= 8)
                        throw NumericalError("simplex failed to confirm optimality after refactorization");
                    if (!basics_feasible())
                        throw NumericalError("basis lost primal feasibility (numerically unstable)");
                    const Eigen::VectorXd y2 = btran(basic_costs());
                    if (!has_eligible(y2)) return true;
                    continue;
                }
                return true;
            }

            Eigen::VectorXd w = ftran(column(enter));

            // ratio test: how far can the entering variable move
            double t = ub_[enter] - lb_[enter];  // bound-to-bound span
            int leave = -1;
            double leave_bound = 0.0;
            for (int r = 0; r < m_; ++r) {
                const double delta = enter_dir * w[r];
                const int bj = basis_[r];
                double cand = kInfinity, bound = 0.0;
                if (delta > kPivotTol && std::isfinite(lb_[bj])) {
                    cand = (value_[bj] - lb_[bj]) / delta;
                    bound = lb_[bj];
                } else if (delta < -kPivotTol && std::isfinite(ub_[bj])) {
                    cand = (value_[bj] - ub_[bj]) / delta;
                    bound = ub_[bj];
                }
                if (cand < -1e-12) cand = 0.0;
                if (cand < t - 1e-12 || (cand < t + 1e-12 && leave >= 0 && bj < basis_[leave])) {
                    t = cand;
                    leave = r;
                    leave_bound = bound;
                }
            }
            if (t == kInfinity) {
                if (phase_one_) return false;
                ray_entering_ = enter;
                ray_dir_ = enter_dir;
                ray_w_ = w;
                return false;
            }
            t = std::max(t, 0.0);

            if (t <= kDegenerateStep) {
                if (++degenerate_run_ > cfg_.degenerate_pivot_limit) bland_ = true;
            } else {
                degenerate_run_ = 0;
            }

            // apply the step
            for (int r = 0; r < m_; ++r) value_[basis_[r]] -= t * enter_dir * w[r];
            value_[enter] += enter_dir * t;

            if (leave < 0) {
                // bound-to-bound flip, no basis change
                state_[enter] = (enter_dir > 0.0) ? VarState::AtUpper : VarState::AtLower;
                value_[enter] = (enter_dir > 0.0) ? ub_[enter] : lb_[enter];
                continue;
            }

            const int out_var = basis_[leave];
            state_[out_var] = (leave_bound == lb_[out_var] && std::isfinite(lb_[out_var]))
                                  ? VarState::AtLower
                                  : VarState::AtUpper;
            value_[out_var] = leave_bound;
            basis_[leave] = enter;
            state_[enter] = VarState::Basic;
            etas_.emplace_back(leave, w);
            if (static_cast<int>(etas_.size()) >= cfg_.refactor_interval) factorize();
        }
    }

    bool basics_feasible() const {
        const double tol = 10.0 * cfg_.feasibility_tol;
        for (int r = 0; r < m_; ++r) {
            const int j = basis_[r];
            if (value_[j] < lb_[j] - tol || value_[j] > ub_[j] + tol) return false;
        }
        return true;
    }

    bool has_eligible(const Eigen::VectorXd& y) const {
        for (int j = 0; j < ntot(); ++j) {
            if (state_[j] == VarState::Basic || fixed(j)) continue;
            const double d = reduced_cost(j, y);
            if (state_[j] == VarState::AtLower && d < -cfg_.optimality_tol) return true;
            if (state_[j] == VarState::AtUpper && d > cfg_.optimality_tol) return true;
            if (state_[j] == VarState::NonbasicFree && std::abs(d) > cfg_.optimality_tol) return true;
        }
        return false;
    }

    void extract_primal(LpSolution& out) const {
        out.primal.assign(value_.begin(), value_.begin() + nstruct_);
    }

    void extract_duals(LpSolution& out) const {
        const Eigen::VectorXd y = btran(basic_costs());
        out.row_duals.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) out.row_duals[i] = y[i];
        out.reduced_costs.assign(nstruct_, 0.0);
        for (int j = 0; j < nstruct_; ++j) out.reduced_costs[j] = reduced_cost(j, y);
    }
};

}  // namespace

LpSolution solve_lp(const LinearModel& model, const SolverConfig& cfg) {
    Simplex s(model, nullptr, nullptr, cfg);
    return s.solve();
}

LpSolution solve_lp_with_bounds(const LinearModel& model, const std::vector<double>& lb_override,
                                const std::vector<double>& ub_override, const SolverConfig& cfg) {
    require(static_cast<int>(lb_override.size()) == model.num_variables() &&
                static_cast<int>(ub_override.size()) == model.num_variables(),
            "bound override size mismatch");
    Simplex s(model, &lb_override, &ub_override, cfg);
    return s.solve();
}

LpCheck check_lp_solution(const LinearModel& model, const LpSolution& sol) {
    LpCheck chk;
    const int n = model.num_variables();
    const int m = model.num_constraints();
    require(sol.status == SolveStatus::Optimal, "check_lp_solution expects an optimal solution");
    require(static_cast<int>(sol.primal.size()) == n && static_cast<int>(sol.row_duals.size()) == m,
            "solution/model dimension mismatch");

    for (int j = 0; j < n; ++j) {
        const auto& v = model.variable(j);
        chk.primal_infeasibility = std::max(chk.primal_infeasibility, v.lb - sol.primal[j]);
        chk.primal_infeasibility = std::max(chk.primal_infeasibility, sol.primal[j] - v.ub);
    }
    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) {
        const auto& row = model.constraint(i);
        double ax = 0.0;
        for (const auto& [j, a] : row.coeffs) ax += a * sol.primal[j];
        const double y = sol.row_duals[i];
        double slack = 0.0;
        switch (row.sense) {
            case RowSense::LessEqual:
                chk.primal_infeasibility = std::max(chk.primal_infeasibility, ax - row.rhs);
                chk.dual_infeasibility = std::max(chk.dual_infeasibility, y);
                slack = row.rhs - ax;
                break;
            case RowSense::GreaterEqual:
                chk.primal_infeasibility = std::max(chk.primal_infeasibility, row.rhs - ax);
                chk.dual_infeasibility = std::max(chk.dual_infeasibility, -y);
                slack = ax - row.rhs;
                break;
            case RowSense::Equal:
                chk.primal_infeasibility = std::max(chk.primal_infeasibility, std::abs(ax - row.rhs));
                slack = 0.0;
                break;
        }
        chk.complementarity = std::max(chk.complementarity, std::abs(y * slack));
        dual_obj += y * row.rhs;
    }
    double primal_obj = 0.0;
    for (int j = 0; j < n; ++j) {
        const auto& v = model.variable(j);
        primal_obj += v.obj * sol.primal[j];
        const double d = sol.reduced_costs.empty() ? 0.0 : sol.reduced_costs[j];
        // reduced-cost sign and complementarity against the active bound
        const double dist_lb = std::isfinite(v.lb) ? sol.primal[j] - v.lb : kInfinity;
        const double dist_ub = std::isfinite(v.ub) ? v.ub - sol.primal[j] : kInfinity;
        if (d > 0.0) {
            chk.complementarity =
                std::max(chk.complementarity, std::isfinite(dist_lb) ? d * dist_lb : d);
        } else if (d < 0.0) {
            chk.complementarity =
                std::max(chk.complementarity, std::isfinite(dist_ub) ? -d * dist_ub : -d);
        }
        if (!std::isfinite(dist_lb) && !std::isfinite(dist_ub)) {
            chk.dual_infeasibility = std::max(chk.dual_infeasibility, std::abs(d));
        }
        if (d > 0.0 && std::isfinite(v.lb)) dual_obj += d * v.lb;
        if (d < 0.0 && std::isfinite(v.ub)) dual_obj += d * v.ub;
        if (d > 0.0 && !std::isfinite(v.lb)) chk.dual_infeasibility = std::max(chk.dual_infeasibility, d);
        if (d < 0.0 && !std::isfinite(v.ub)) chk.dual_infeasibility = std::max(chk.dual_infeasibility, -d);
    }
    chk.duality_gap = std::abs(primal_obj - dual_obj) / (1.0 + std::abs(primal_obj));
    return chk;
}

void write_lp_format(const LinearModel& model, std::ostream& out) {
    out << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < model.num_variables(); ++j) {
        const auto& v = model.variable(j);
        if (v.obj == 0.0) continue;
        out << (v.obj >= 0.0 && !first ? " + " : " ") << v.obj << " " << v.name;
        first = false;
    }
    if (first) out << " 0 " << (model.num_variables() > 0 ? model.variable(0).name : "x");
    out << "\nSubject To\n";
    for (int i = 0; i < model.num_constraints(); ++i) {
        const auto& row = model.constraint(i);
        out << " " << row.name << ":";
        if (row.coeffs.empty()) out << " 0 " << model.variable(0).name;
        for (const auto& [j, a] : row.coeffs) {
            out << (a >= 0.0 ? " + " : " - ") << std::abs(a) << " " << model.variable(j).name;
        }
        switch (row.sense) {
            case RowSense::LessEqual: out << " <= "; break;
            case RowSense::Equal: out << " = "; break;
            case RowSense::GreaterEqual: out << " >= "; break;
        }
        out << row.rhs << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < model.num_variables(); ++j) {
        const auto& v = model.variable(j);
        if (!std::isfinite(v.lb) && !std::isfinite(v.ub)) {
            out << " " << v.name << " free\n";
        } else {
            out << " ";
            if (std::isfinite(v.lb)) out << v.lb << " <= ";
            else out << "-inf <= ";
            out << v.name;
            if (std::isfinite(v.ub)) out << " <= " << v.ub;
            out << "\n";
        }
    }
    out << "End\n";
}

}  // namespace drni
