#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace drni {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Thrown when a caller violates a documented precondition (bad dimensions,
/// invalid probability vectors, alpha out of range, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when the simplex kernel cannot certify a result after bounded
/// refactorization attempts. Never a silent wrong answer.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration-based routine refuses to run because the
/// plan/universe count exceeds its configured cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Central numeric tolerances. One instance is threaded through every solve so
/// all modules agree on what "feasible" and "optimal" mean.
struct SolverConfig {
    double feasibility_tol = 1e-7;
    double optimality_tol = 1e-7;
    double integrality_tol = 1e-6;
    double mip_gap = 1e-6;

    int max_simplex_iterations = 500000;
    int degenerate_pivot_limit = 1000;  // consecutive degenerate pivots before Bland's rule
    int refactor_interval = 100;
    long max_mip_nodes = 5000000;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractViolation(what);
}

}  // namespace drni
