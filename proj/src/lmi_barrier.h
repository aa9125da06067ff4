#pragma once

#include <vector>

#include "symext/matrix.h"

namespace symext::detail {

// minimize cᵀy subject to A(y) = a0 + Σ_k y_k a[k] ⪰ 0.
struct LmiProblem {
    std::vector<double> c;
    CMatrix a0;
    std::vector<CMatrix> a;
};

struct BarrierOptions {
    double mu_start = 1;
    double mu_factor = 0.1;
    double mu_stop = 1e-9;
    int max_newton_per_stage = 100;
    double newton_tol = 1e-10;  // on half the squared Newton decrement
};

struct BarrierResult {
    std::vector<double> y;
    double objective = 0;  // cᵀy at the last iterate (an upper bound on the optimum)
    CMatrix dual;          // μ·A(y)⁻¹: approximately feasible for the dual problem
    double mu = 0;
    double gap = 0;  // cᵀy + Tr[dual·a0]
    int iterations = 0;
    bool converged = false;
};

/// Log-det barrier with damped Newton steps. y0 must be strictly feasible
/// (DomainError otherwise).
BarrierResult solve_lmi(const LmiProblem& problem, std::vector<double> y0, const BarrierOptions& options = {});

}  // namespace symext::detail
