#include "symext/analytic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "symext/errors.h"
#include "symext/wide_real.h"
#include "symext/symmetry_reduction.h"

namespace symext {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kBoundarySlack = 1e-12;
constexpr double kCandidatePsdTol = 1e-10;

void require_state(const AlphaCoords& alpha, const char* who) {
    if (std::abs(alpha.alpha0 - 1) > 1e-12 || !alpha.in_state_space()) {
        throw NotAStateError(std::string(who) + ": alpha is not a normalized Bell-diagonal state");
    }
}

HermMat real_sym(double a11, double a12, double a13, double a22, double a23, double a33) {
    return HermMat::from_rows({{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}});
}

struct Candidate {
    CertificateKind kind;
    HermMat z;
    std::optional<std::array<double, 3>> x;
};

std::optional<Candidate> rank_one_candidate(const AlphaCoords& al) {
    const double d = al.alpha2 * al.alpha2 - al.alpha3 * al.alpha3;
    if (!(al.alpha1 * d > 0)) return std::nullopt;
    const double z22 = d / (4 * al.alpha1);
    const double s = std::sqrt(z22);
    const std::array<double, 3> v = {al.alpha2 / (2 * s), s, al.alpha3 / (2 * s)};
    return Candidate{CertificateKind::rank_one,
                     real_sym(v[0] * v[0], v[0] * v[1], v[0] * v[2], v[1] * v[1], v[1] * v[2], v[2] * v[2]),
                     std::nullopt};
}

// The four Z that are complementary to a rank-one F(x). Only the ones that are
// PSD (to kCandidatePsdTol, scaled) are returned.
std::vector<Candidate> rank_two_candidates(const AlphaCoords& al) {
    const double a1 = al.alpha1, a2 = al.alpha2, a3 = al.alpha3;
    const double k = 1 / (2 * kSqrt2);
    std::vector<Candidate> out;
    for (double s : {1.0, -1.0}) {
        // x = (1, s√2, 0)
        out.push_back({CertificateKind::rank_two,
                       k * real_sym(-s * a2, kSqrt2 * a2, -s * a3, -2 * s * a2, kSqrt2 * a3,
                                    -2 * kSqrt2 * a1 - s * a2),
                       std::array<double, 3>{1, s * kSqrt2, 0}});
        // x = (−1, 0, s√2)
        out.push_back({CertificateKind::rank_two,
                       k * real_sym(2 * kSqrt2 * a1 - s * a3, kSqrt2 * a2, -s * a2, -2 * s * a3, kSqrt2 * a3,
                                    -s * a3),
                       std::array<double, 3>{-1, 0, s * kSqrt2}});
    }
    const double scale = std::max({1.0, std::abs(a1), std::abs(a2), std::abs(a3)});
    std::erase_if(out, [&](const Candidate& c) { return min_eigenvalue(c.z) < -kCandidatePsdTol * scale; });
    return out;
}

std::optional<Candidate> axis_candidate(const AlphaCoords& al) {
    if (al.alpha2 != 0 || al.alpha3 != 0) return std::nullopt;
    const double s = std::abs(al.alpha1);
    return Candidate{CertificateKind::boundary_vertex, real_sym((s + al.alpha1) / 2, 0, 0, 0, 0, (s - al.alpha1) / 2),
                     std::nullopt};
}

const Candidate* smallest_trace(const std::vector<Candidate>& cs) {
    const Candidate* best = nullptr;
    for (const auto& c : cs) {
        if (best == nullptr || c.z.trace() < best->z.trace()) best = &c;
    }
    return best;
}

}  // namespace

double SymextTerms::best() const { return std::max({a, b, c}); }

namespace {

// u = 1 − α1 and v = 1 + α1 are carried separately; near α1 = ±1 they keep
// digits that α1 itself has lost. Distilled states also push |α2|, |α3| and
// u far below the double range, hence WideReal.
struct TermInputs {
    WideReal a1, u, v, abs2, abs3;
};

TermInputs inputs(const AlphaCoords& al) {
    return {al.alpha1, 1 - al.alpha1, 1 + al.alpha1, std::abs(al.alpha2), std::abs(al.alpha3)};
}

TermInputs inputs(const BellProbs& p) {
    const WideReal &s0 = p.wide_no_flip_sum(), &s1 = p.wide_flip_sum();
    return {s0 - s1, 2 * s1, 2 * s0, kSqrt2 * abs(p.wide_no_flip_diff()), kSqrt2 * abs(p.wide_flip_diff())};
}

struct WideTerms {
    std::array<WideReal, 3> value;
    std::array<WideReal, 3> scale;  // summed magnitudes of the pieces
};

WideTerms wide_terms(const TermInputs& t) {
    const WideReal s2 = t.abs2 * t.abs2;
    const WideReal s3 = t.abs3 * t.abs3;
    const WideReal d = s2 - s3;
    const WideReal k2 = 2 * kSqrt2 * t.a1 * t.abs2;
    const WideReal k3 = 2 * kSqrt2 * t.a1 * t.abs3;
    return {
        {4 * t.a1 * (s2 * t.u - s3 * t.v) - d * d, d - k2, k3 - d},
        {4 * abs(t.a1) * (s2 * t.u + s3 * t.v) + d * d, s2 + s3 + abs(k2), s2 + s3 + abs(k3)},
    };
}

SymextTerms raw_terms(const TermInputs& t) {
    const auto w = wide_terms(t);
    return {.a = w.value[0].to_double(), .b = w.value[1].to_double(), .c = w.value[2].to_double()};
}

bool decide(const TermInputs& t) {
    const auto w = wide_terms(t);
    for (std::size_t i = 0; i < 3; ++i) {
        if (w.value[i] + kBoundarySlack * w.scale[i] >= 0) return true;
    }
    return false;
}

}  // namespace

SymextTerms symext_terms(const AlphaCoords& al) { return raw_terms(inputs(al)); }

SymextTerms symext_terms(const BellProbs& p) { return raw_terms(inputs(p)); }

bool has_symext(const AlphaCoords& alpha) {
    require_state(alpha, "has_symext");
    return decide(inputs(alpha));
}

bool has_symext(const BellProbs& p) { return decide(inputs(p)); }

double rank1_trace(const AlphaCoords& al) {
    const double s2 = al.alpha2 * al.alpha2;
    const double s3 = al.alpha3 * al.alpha3;
    const double d = s2 - s3;
    if (!(al.alpha1 * d > 0)) {
        throw DegenerateInputError("rank1_trace: needs alpha1*(alpha2^2 - alpha3^2) > 0");
    }
    return (d * d + 4 * al.alpha1 * al.alpha1 * (s2 + s3)) / (4 * al.alpha1 * d);
}

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::rank_one: return "rank_one";
        case CertificateKind::rank_two: return "rank_two";
        case CertificateKind::boundary_vertex: return "boundary_vertex";
    }
    return "unknown";
}

ExtCertificate extension_certificate(const AlphaCoords& alpha) {
    if (!has_symext(alpha)) throw DomainError("extension_certificate: state has no symmetric extension");
    constexpr double kTraceSlack = 1e-9;

    if (alpha.alpha1 == 0 && alpha.alpha2 == 0 && alpha.alpha3 == 0) {
        return {CertificateKind::boundary_vertex, 0.25 * HermMat::identity(3), std::nullopt};
    }
    if (auto r1 = rank_one_candidate(alpha); r1 && r1->z.trace() <= 1 + kTraceSlack) {
        return {r1->kind, r1->z, std::nullopt};
    }
    auto r2 = rank_two_candidates(alpha);
    std::erase_if(r2, [&](const Candidate& c) { return c.z.trace() > 1 + kTraceSlack; });
    if (const Candidate* c = smallest_trace(r2)) return {c->kind, c->z, c->x};
    if (auto ax = axis_candidate(alpha); ax && ax->z.trace() <= 1 + kTraceSlack) {
        return {ax->kind, ax->z, std::nullopt};
    }
    throw InternalError("extension_certificate: no closed-form candidate for an extendible state");
}

double analytic_primal_optimum(const AlphaCoords& alpha) {
    require_state(alpha, "analytic_primal_optimum");
    auto cs = rank_two_candidates(alpha);
    if (auto r1 = rank_one_candidate(alpha)) cs.push_back(*r1);
    if (auto ax = axis_candidate(alpha)) cs.push_back(*ax);
    const Candidate* best = smallest_trace(cs);
    if (best == nullptr) throw InternalError("analytic_primal_optimum: no feasible candidate");
    return best->z.trace();
}

double moment_residual(const HermMat& z, const AlphaCoords& alpha) {
    const auto& f = f_matrices();
    const std::array<double, 3> target = {alpha.alpha1, alpha.alpha2, alpha.alpha3};
    double worst = 0;
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(hs_inner(f[i + 1], z) - target[i]));
    return worst;
}

bool LiftReport::ok() const {
    return min_eigenvalue >= -1e-9 && trace_error <= 1e-12 && swap_residual <= 1e-12 && marginal_error <= 1e-9;
}

LiftReport check_lift(const HermMat& rho_abb, const BellProbs& p) {
    if (rho_abb.dim() != 8) throw DimensionError("check_lift: expected an 8x8 operator");
    static constexpr std::array<std::size_t, 3> dims = {2, 2, 2};
    static constexpr std::array<std::size_t, 2> keep = {0, 1};
    const CMatrix& v = swap_bb();
    LiftReport r;
    r.min_eigenvalue = min_eigenvalue(rho_abb);
    r.trace_error = std::abs(rho_abb.trace() - 1);
    r.swap_residual = (rho_abb.matrix() - v * rho_abb.matrix() * v.adjoint()).frobenius_norm();
    r.marginal_error = max_abs_diff(partial_trace(rho_abb, dims, keep).matrix(), to_density_matrix(p).matrix());
    return r;
}

HermMat lift_extension(const ExtCertificate& cert, const BellProbs& p) {
    if (cert.z.dim() != 3) throw DimensionError("lift_extension: certificate Z must be 3x3");
    if (moment_residual(cert.z, p_to_alpha(p)) > 1e-10) {
        throw DomainError("lift_extension: certificate does not match the state");
    }
    const TripletBlock block{cert.z, 1 - cert.z.trace()};
    HermMat rho = 0.5 * block.abb_operator();
    if (!check_lift(rho, p).ok()) throw InternalError("lift_extension: lifted operator violates its postconditions");
    return rho;
}

std::optional<double> cross_section_boundary(double alpha1, BoundaryCurve which) {
    double a2sq = 0;
    switch (which) {
        case BoundaryCurve::outer: a2sq = 1 - 4 * (alpha1 - 0.5) * (alpha1 - 0.5); break;
        case BoundaryCurve::inner: a2sq = (2.0 / 3.0) * (1 - 2.25 * (alpha1 - 1.0 / 3.0) * (alpha1 - 1.0 / 3.0)); break;
    }
    if (a2sq < 0) return std::nullopt;
    return a2sq;
}

}  // namespace symext
