#pragma once

#include <array>
#include <optional>
#include <string>

#include "symext/bell_state.h"
#include "symext/matrix.h"

namespace symext {

/// Left-hand sides of the three extendibility inequalities. The state has a
/// symmetric extension iff at least one is ≥ 0.
///   a: 4α1(α2²−α3²) − (α2²−α3²)² − 4α1²(α2²+α3²)
///   b: α2² − α3² − 2√2·α1·|α2|
///   c: α3² − α2² + 2√2·α1·|α3|
struct SymextTerms {
    double a = 0;
    double b = 0;
    double c = 0;

    double best() const;
};

SymextTerms symext_terms(const AlphaCoords& alpha);
/// Same terms from parity coordinates, without the cancellation in 1 − α1.
SymextTerms symext_terms(const BellProbs& p);

/// Closed-form decision. Each term gets slack 1e-12 times the summed
/// magnitudes of its pieces, so the test keeps its meaning for states very
/// close to the α = (1, 0, 0) vertex. NotAStateError for invalid α.
bool has_symext(const AlphaCoords& alpha);
/// Preferred for states produced by repeated distillation steps.
bool has_symext(const BellProbs& p);

/// Trace of the unique rank-one Z meeting the moment constraints:
/// ((α2²−α3²)² + 4α1²(α2²+α3²)) / (4α1(α2²−α3²)).
/// Such a Z exists only when α1(α2²−α3²) > 0; otherwise DegenerateInputError.
double rank1_trace(const AlphaCoords& alpha);

enum class CertificateKind { rank_one, rank_two, boundary_vertex };

std::string to_string(CertificateKind kind);

struct ExtCertificate {
    CertificateKind kind = CertificateKind::boundary_vertex;
    HermMat z;  // real symmetric 3×3
    std::optional<std::array<double, 3>> witness_x;

    double trace() const { return z.trace(); }
};

/// Z with Tr[F_i Z] = α_i, Z ⪰ 0 and Tr Z ≤ 1 for an extendible α.
///
/// Rank-one Z when it exists with trace ≤ 1, otherwise the smallest-trace
/// positive candidate among the four rank-two matrices complementary to a
/// rank-one F(x), otherwise a diagonal Z for α2 = α3 = 0. The maximally mixed
/// point gets Z = 1/4. DomainError if α is not extendible, InternalError if
/// no construction applies.
ExtCertificate extension_certificate(const AlphaCoords& alpha);

/// min Tr Z over the same closed-form candidates, whether or not ≤ 1. This is
/// the optimum of the reduced primal problem; |1 − value| measures how far α
/// sits from the extendibility boundary.
double analytic_primal_optimum(const AlphaCoords& alpha);

/// Largest deviation of Tr[F_i Z] from α_i over i = 1..3.
double moment_residual(const HermMat& z, const AlphaCoords& alpha);

struct LiftReport {
    double min_eigenvalue = 0;
    double trace_error = 0;
    double swap_residual = 0;
    double marginal_error = 0;

    /// Thresholds: eigenvalue ≥ −1e-9, trace 1e-12, swap 1e-12, marginal 1e-9.
    bool ok() const;
};

LiftReport check_lift(const HermMat& rho_abb, const BellProbs& p);

/// ρ^ABB′ = (1/2)·1_F ⊗ (Z ⊕ (1 − Tr Z)|Ψ−⟩⟨Ψ−|) in ABB′ ordering.
/// DomainError if the certificate's moments miss p_to_alpha(p) by more than
/// 1e-10; InternalError if the result fails check_lift.
HermMat lift_extension(const ExtCertificate& cert, const BellProbs& p);

enum class BoundaryCurve { outer, inner };

/// α2² on 4(α1−½)² + α2² = 1 (outer) or (9/4)(α1−⅓)² + (3/2)α2² = 1 (inner);
/// nullopt where the ellipse does not reach α1.
std::optional<double> cross_section_boundary(double alpha1, BoundaryCurve which);

}  // namespace symext
