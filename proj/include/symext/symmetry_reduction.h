#pragma once

#include <array>

#include "symext/bell_state.h"
#include "symext/matrix.h"

namespace symext {

// Three-qubit operators are ordered A ⊗ B ⊗ B′ (index a·4 + b·2 + b′).
//
// The logical qubits F, G, H are the simultaneous eigenbasis of the encoded
// Z operators ZZZ, ZZI, ZIZ. In that basis BB′-swap becomes GH-swap and any
// operator commuting with XXX and ZZZ factors as 1_F ⊗ (block on GH).

/// Permutation whose column k is the ABB′ computational vector carrying FGH label k.
const CMatrix& fgh_basis();

/// u† m u: matrix elements of an ABB′ operator in the FGH basis.
HermMat to_fgh(const HermMat& m_abb);
/// u m u†: inverse of to_fgh.
HermMat from_fgh(const HermMat& m_fgh);

enum class LogicalQubit { F, G, H };
enum class PauliAxis { X, Z };

/// Encoded logical Pauli as an ABB′ operator, e.g. X_G = X ⊗ 1 ⊗ X.
CMatrix encoded_pauli(LogicalQubit q, PauliAxis axis);

/// Swap of B and B′.
const CMatrix& swap_bb();

/// (m + V m V†)/2.
HermMat symmetrize_bb(const HermMat& m);

/// Swap-invariant GH operator R ⊕ w·|Ψ−⟩⟨Ψ−|, with R written in the triplet
/// basis (|00⟩, |Ψ+⟩, |11⟩).
struct TripletBlock {
    HermMat r;
    double singlet_weight = 0;

    /// The 4×4 operator on GH in its computational basis.
    HermMat gh_operator() const;
    /// 1_F ⊗ gh_operator(), mapped back to ABB′ ordering.
    HermMat abb_operator() const;
};

/// R_{Φ±} for j = I, Z and R_{Ψ±} for j = X, Y, with singlet weight 1.
TripletBlock r_matrix(BellIndex j);

/// Σ_j k_j R_j ⊕ Σ_j k_j. The ABB′ operator Sym(Σ_j k_j |β_j⟩⟨β_j| ⊗ 1) equals
/// reduction_prefactor() times its abb_operator().
TripletBlock reduce_bell_operator(const std::array<double, 4>& k);

/// Sym_{BB′}(Σ_j k_j |β_j⟩⟨β_j| ⊗ 1), computed directly on 8×8 matrices.
HermMat symmetrized_bell_operator(const std::array<double, 4>& k);

/// F0 = 1, F1 = diag(1, 0, −1), F2 and F3 the symmetric units on (1,2) and (2,3).
const std::array<HermMat, 4>& f_matrices();

/// The constant c in Sym(|β_j⟩⟨β_j| ⊗ 1) = c · 1_F ⊗ (R_j ⊕ Ψ−).
///
/// Measured on first use from the 8×8 computation for Φ+ and checked to
/// 1e-12 against the other three Bell states (InternalError otherwise).
double reduction_prefactor();

}  // namespace symext
