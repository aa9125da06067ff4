#pragma once

#include <string>
#include <vector>

#include "symext/bell_state.h"
#include "symext/matrix.h"

namespace symext {

enum class VerdictStatus { extendible, not_extendible, undecided };

std::string to_string(VerdictStatus status);

struct SdpVerdict {
    VerdictStatus status = VerdictStatus::undecided;
    /// Optimal value of the solved program at the final iterate.
    double objective = 0;
    /// Signed distance to the extendibility threshold; positive means extendible.
    double margin = 0;
    /// Primal matrix: Z for the reduced problems, the 8×8 extension for the full one.
    HermMat primal_solution;
    /// x for the reduced problems; (l_1..l_15) of K = 1 + Σ l_j P_j for the full one.
    std::vector<double> dual_solution;
    /// Primal objective minus dual objective (≥ 0 up to round-off).
    double gap = 0;
    double slackness_residual = 0;
    int iterations = 0;
    bool converged = false;

    bool extendible() const { return status == VerdictStatus::extendible; }
};

/// min Σ x_i α_i subject to F0 + Σ x_i F_i ⪰ 0. Extendible iff the optimum is
/// ≥ −1 − tol. primal_solution is the dual matrix Z recovered from the barrier.
SdpVerdict solve_simplified_dual(const AlphaCoords& alpha, double tol = 1e-7);

/// min Tr Z subject to Z ⪰ 0, Tr[F_i Z] = α_i. Extendible iff the optimum is
/// ≤ 1 + tol. dual_solution is the x recovered from the barrier.
SdpVerdict solve_simplified_primal(const AlphaCoords& alpha, double tol = 1e-7);

/// ‖F(x*)·Z*‖_F from a dual and a primal reduced solve on the same α.
double slackness_report(const SdpVerdict& primal, const SdpVerdict& dual);

/// Full symmetric-extension program on 8×8 operators.
///
/// Maximizes λ over BB′-swap-invariant X with Tr_B′ X = ρ and X − λ·1 ⪰ 0.
/// The marginal condition is imposed through 1 and a traceless basis L_i of
/// two-qubit operators (normalized Pauli products unless given). margin is
/// 8λ*, which equals the optimum of max 1 − Tr[X′] over X′ ⪰ 0.
class FullExtensionSdp {
  public:
    FullExtensionSdp();
    /// `traceless_basis` must hold 15 linearly independent traceless 4×4
    /// operators. DegenerateInputError if the constraint Gram matrix has
    /// reciprocal condition number below 1e-12.
    explicit FullExtensionSdp(std::vector<HermMat> traceless_basis);

    /// Condition number of the constraint Gram matrix.
    double gram_condition() const { return gram_condition_; }

    /// Certified extendible when the feasible lower bound on the margin is
    /// ≥ −tol, certified not extendible when the dual upper bound is < −tol,
    /// undecided otherwise or when the barrier does not converge.
    SdpVerdict solve(const HermMat& rho, double tol = 1e-7) const;

  private:
    std::vector<HermMat> constraint_ops_;  // 1 followed by the traceless basis
    std::vector<HermMat> sym_basis_;       // orthonormal basis of swap-invariant Hermitian 8×8
    std::vector<std::vector<double>> c_;   // c_[i][k] = Tr[(N_i ⊗ 1) E_k]
    std::vector<double> gram_inv_;         // (C Cᵀ)⁻¹, row-major
    std::vector<CMatrix> null_ops_;        // operators spanning the kernel of C
    double gram_condition_ = 0;
};

/// FullExtensionSdp with the default basis (constructed once).
SdpVerdict check_extendible_numeric(const HermMat& rho, double tol = 1e-7);

}  // namespace symext
