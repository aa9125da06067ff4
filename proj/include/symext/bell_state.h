#pragma once

#include <array>
#include <cstddef>
#include <random>

#include "symext/matrix.h"
#include "symext/wide_real.h"

namespace symext {

/// Bell basis labels. Index j names the state (1 ⊗ σ_j)|Φ+⟩ up to phase:
/// I -> Φ+, X -> Ψ+, Y -> Ψ−, Z -> Φ−.
enum class BellIndex : std::size_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<BellIndex, 4> kBellIndices = {BellIndex::I, BellIndex::X, BellIndex::Y, BellIndex::Z};

/// Eigenvalues (p_I, p_x, p_y, p_z) of a Bell-diagonal two-qubit state.
///
/// Stored in parity coordinates: the no-bit-flip pair (p_I ± p_z) and the
/// bit-flip pair (p_x ± p_y). Two-way distillation maps act multiplicatively
/// on these four numbers, so quantities built from p_I − p_z stay accurate
/// to relative machine precision across many rounds, which they do not when
/// p_I and p_z are stored separately. The coordinates are WideReal so that
/// weights squared past the double range keep their value.
class BellProbs {
  public:
    /// Components may undershoot zero by 1e-12 (clamped); the sum must be
    /// within 1e-9 of one (renormalized). Anything else is NotAStateError.
    static BellProbs from_p(const std::array<double, 4>& p);

    /// From (p_I + p_z, p_I − p_z, p_x + p_y, p_x − p_y). Same tolerances as from_p.
    static BellProbs from_parity(const WideReal& no_flip_sum, const WideReal& no_flip_diff, const WideReal& flip_sum,
                                 const WideReal& flip_diff);

    std::array<double, 4> p() const;
    double operator[](BellIndex j) const;

    double no_flip_sum() const { return no_flip_sum_.to_double(); }
    double no_flip_diff() const { return no_flip_diff_.to_double(); }
    double flip_sum() const { return flip_sum_.to_double(); }
    double flip_diff() const { return flip_diff_.to_double(); }

    /// Same four coordinates without rounding to double.
    const WideReal& wide_no_flip_sum() const { return no_flip_sum_; }
    const WideReal& wide_no_flip_diff() const { return no_flip_diff_; }
    const WideReal& wide_flip_sum() const { return flip_sum_; }
    const WideReal& wide_flip_diff() const { return flip_diff_; }

  private:
    // tagged so that a braced list of four numbers never converts silently
    struct Raw {};
    BellProbs(Raw, const WideReal& s0, const WideReal& d0, const WideReal& s1, const WideReal& d1)
        : no_flip_sum_(s0), no_flip_diff_(d0), flip_sum_(s1), flip_diff_(d1) {}

    WideReal no_flip_sum_;
    WideReal no_flip_diff_;
    WideReal flip_sum_;
    WideReal flip_diff_;
};

/// Working coordinates of the Bell-diagonal tetrahedron. alpha0 is 1 for states.
struct AlphaCoords {
    double alpha0 = 1;
    double alpha1 = 0;
    double alpha2 = 0;
    double alpha3 = 0;

    /// The four face inequalities α1 ± √2α2 ≥ −1, −α1 ± √2α3 ≥ −1 with slack `tol`.
    bool in_state_space(double tol = 1e-12) const;
    /// Smallest of the four face slacks (each is 4·p_j for normalized α).
    double face_slack() const;
};

AlphaCoords p_to_alpha(const BellProbs& p);
/// Throws NotAStateError when alpha0 != 1 or a face inequality fails by more than 1e-12.
BellProbs alpha_to_p(const AlphaCoords& a);

/// Computational-basis amplitudes of the Bell vector with label j.
std::array<Complex, 4> bell_vector(BellIndex j);

HermMat to_density_matrix(const BellProbs& p);

/// Bell-basis diagonal of a two-qubit density matrix, which is what the
/// random σ_i ⊗ σ_i twirl leaves behind. Throws NotAStateError unless rho is
/// PSD and unit trace within 1e-10.
BellProbs twirl(const HermMat& rho);

/// QBERs (q_x, q_y, q_z) with q_j = 1 − p_I − p_j.
std::array<double, 3> qber(const BellProbs& p);

/// PPT test on the density matrix (exact for two qubits).
bool is_separable(const BellProbs& p);

/// Uniform over the Bell-diagonal tetrahedron: (α1, α2, α3) drawn from the
/// bounding box and rejected until the face inequalities hold.
AlphaCoords sample_uniform_alpha(std::mt19937_64& rng);

/// result[i] = p[perm[i]]. Throws DomainError if perm is not a permutation of 0..3.
BellProbs permute(const BellProbs& p, const std::array<std::size_t, 4>& perm);

}  // namespace symext
