#include "symext/sdp.h"

#include <algorithm>
#include <cmath>

#include "lmi_barrier.h"
#include "symext/errors.h"
#include "symext/symmetry_reduction.h"

namespace symext {

namespace {

using detail::BarrierOptions;
using detail::LmiProblem;
using detail::solve_lmi;

CMatrix unit_sym3(std::size_t i, std::size_t j) {
    CMatrix m(3, 3);
    m(i, j) = 1;
    m(j, i) = 1;
    return m;
}

HermMat f_of_x(const std::vector<double>& x) {
    const auto& f = f_matrices();
    return f[0] + x[0] * f[1] + x[1] * f[2] + x[2] * f[3];
}

void require_alpha(const AlphaCoords& alpha, const char* who) {
    if (std::abs(alpha.alpha0 - 1) > 1e-12 || !alpha.in_state_space()) {
        throw NotAStateError(std::string(who) + ": alpha is not a normalized Bell-diagonal state");
    }
}

}  // namespace

std::string to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::extendible: return "extendible";
        case VerdictStatus::not_extendible: return "not_extendible";
        case VerdictStatus::undecided: return "undecided";
    }
    return "unknown";
}

SdpVerdict solve_simplified_dual(const AlphaCoords& alpha, double tol) {
    require_alpha(alpha, "solve_simplified_dual");
    const auto& f = f_matrices();
    LmiProblem prob{{alpha.alpha1, alpha.alpha2, alpha.alpha3}, f[0].matrix(), {f[1].matrix(), f[2].matrix(), f[3].matrix()}};
    const auto res = solve_lmi(prob, {0, 0, 0});

    SdpVerdict v;
    v.objective = res.objective;
    v.margin = res.objective + 1;
    v.dual_solution = res.y;
    v.primal_solution = HermMat(res.dual);
    v.gap = res.gap;
    v.iterations = res.iterations;
    v.converged = res.converged;
    v.slackness_residual = (f_of_x(res.y).matrix() * v.primal_solution.matrix()).frobenius_norm();
    if (v.converged) v.status = v.margin >= -tol ? VerdictStatus::extendible : VerdictStatus::not_extendible;
    return v;
}

SdpVerdict solve_simplified_primal(const AlphaCoords& alpha, double tol) {
    require_alpha(alpha, "solve_simplified_primal");
    // Free entries (z13, z22, z33); z11 = α1 + z33, z12 = α2/2, z23 = α3/2.
    CMatrix a0(3, 3);
    a0(0, 0) = alpha.alpha1;
    a0(0, 1) = a0(1, 0) = alpha.alpha2 / 2;
    a0(1, 2) = a0(2, 1) = alpha.alpha3 / 2;
    CMatrix e22(3, 3);
    e22(1, 1) = 1;
    CMatrix e11_33(3, 3);
    e11_33(0, 0) = e11_33(2, 2) = 1;
    LmiProblem prob{{0, 1, 2}, a0, {unit_sym3(0, 2), e22, e11_33}};
    const double s = 1 + std::abs(alpha.alpha1) + std::abs(alpha.alpha2) + std::abs(alpha.alpha3);
    const auto res = solve_lmi(prob, {0, s, s});

    SdpVerdict v;
    v.objective = alpha.alpha1 + res.objective;
    v.margin = 1 - v.objective;
    HermMat z(prob.a0);
    for (std::size_t k = 0; k < 3; ++k) z += res.y[k] * HermMat(prob.a[k]);
    v.primal_solution = z;
    const CMatrix& w = res.dual;
    v.dual_solution = {(w(0, 0).real() - w(2, 2).real()) / 2, w(0, 1).real(), w(1, 2).real()};
    v.gap = res.gap;
    v.iterations = res.iterations;
    v.converged = res.converged;
    v.slackness_residual = (w * z.matrix()).frobenius_norm();
    if (v.converged) v.status = v.margin >= -tol ? VerdictStatus::extendible : VerdictStatus::not_extendible;
    return v;
}

double slackness_report(const SdpVerdict& primal, const SdpVerdict& dual) {
    if (primal.primal_solution.dim() != 3 || dual.dual_solution.size() != 3) {
        throw DimensionError("slackness_report: expects reduced (3x3) solves");
    }
    return (f_of_x(dual.dual_solution).matrix() * primal.primal_solution.matrix()).frobenius_norm();
}

namespace {

std::vector<HermMat> default_traceless_basis() {
    std::vector<HermMat> out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != 0 || b != 0) out.push_back(0.5 * kron(pauli(a), pauli(b)));
    return out;
}

std::vector<HermMat> swap_invariant_basis() {
    std::vector<HermMat> out;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = b; c < 4; ++c) {
                HermMat m = kron(pauli(a), kron(pauli(b), pauli(c)));
                if (b != c) m += kron(pauli(a), kron(pauli(c), pauli(b)));
                m *= 1 / m.frobenius_norm();
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

// Gram-Schmidt of v against `basis` (orthonormal); returns the residual norm.
double orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            double d = 0;
            for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * q[i];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * q[i];
        }
    }
    double n = 0;
    for (double x : v) n += x * x;
    return std::sqrt(n);
}

}  // namespace

FullExtensionSdp::FullExtensionSdp() : FullExtensionSdp(default_traceless_basis()) {}

FullExtensionSdp::FullExtensionSdp(std::vector<HermMat> traceless_basis) {
    if (traceless_basis.size() != 15) throw DimensionError("FullExtensionSdp: need 15 traceless operators");
    constraint_ops_.push_back(HermMat::identity(4));
    for (auto& l : traceless_basis) {
        if (l.dim() != 4) throw DimensionError("FullExtensionSdp: constraint operators must be 4x4");
        if (std::abs(l.trace()) > 1e-12 * std::max(1.0, l.frobenius_norm())) {
            throw DomainError("FullExtensionSdp: constraint operator is not traceless");
        }
        constraint_ops_.push_back(std::move(l));
    }
    sym_basis_ = swap_invariant_basis();
    const std::size_t m = constraint_ops_.size();
    const std::size_t nb = sym_basis_.size();
    const HermMat id2 = HermMat::identity(2);

    c_.assign(m, std::vector<double>(nb));
    for (std::size_t i = 0; i < m; ++i) {
        const HermMat lifted = kron(constraint_ops_[i], id2);
        for (std::size_t k = 0; k < nb; ++k) c_[i][k] = hs_inner(lifted, sym_basis_[k]);
    }

    CMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < nb; ++k) s += c_[i][k] * c_[j][k];
            gram(i, j) = s;
        }
    const auto es = eigh(HermMat(gram));
    const double lo = es.values.front();
    const double hi = es.values.back();
    if (!(lo > 1e-12 * hi)) {
        throw DegenerateInputError("FullExtensionSdp: constraint operators are linearly dependent");
    }
    gram_condition_ = hi / lo;
    gram_inv_.assign(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < m; ++k)
                s += (es.vectors(i, k) * std::conj(es.vectors(j, k))).real() / es.values[k];
            gram_inv_[i * m + j] = s;
        }

    // Orthonormal row space of C, then its complement from the unit vectors.
    std::vector<std::vector<double>> rows;
    for (const auto& r : c_) {
        auto v = r;
        const double n = orthogonalize(v, rows);
        for (double& x : v) x /= n;
        rows.push_back(std::move(v));
    }
    std::vector<std::vector<double>> null;
    for (std::size_t k = 0; k < nb && rows.size() + null.size() < nb; ++k) {
        std::vector<double> v(nb, 0.0);
        v[k] = 1;
        orthogonalize(v, rows);
        const double n = orthogonalize(v, null);
        if (n < 1e-6) continue;
        for (double& x : v) x /= n;
        null.push_back(std::move(v));
    }
    if (rows.size() + null.size() != nb) throw InternalError("FullExtensionSdp: kernel construction failed");
    for (const auto& v : null) {
        CMatrix op(8, 8);
        for (std::size_t k = 0; k < nb; ++k) op += sym_basis_[k].matrix() * Complex(v[k]);
        null_ops_.push_back(std::move(op));
    }
}

SdpVerdict FullExtensionSdp::solve(const HermMat& rho, double tol) const {
    if (rho.dim() != 4) throw DimensionError("check_extendible_numeric: expected a 4x4 density matrix");
    if (std::abs(rho.trace() - 1) > 1e-10 || min_eigenvalue(rho) < -1e-10) {
        throw NotAStateError("check_extendible_numeric: input is not a density matrix");
    }
    const std::size_t m = constraint_ops_.size();
    const std::size_t nb = sym_basis_.size();

    // Least-norm swap-invariant X0 with the prescribed marginal moments.
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = hs_inner(constraint_ops_[i], rho);
    std::vector<double> mult(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mult[i] += gram_inv_[i * m + j] * b[j];
    std::vector<double> x0(nb, 0.0);
    for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t i = 0; i < m; ++i) x0[k] += c_[i][k] * mult[i];
    HermMat base = HermMat::zero(8);
    for (std::size_t k = 0; k < nb; ++k) base += x0[k] * sym_basis_[k];

    const std::size_t nv = null_ops_.size() + 1;
    LmiProblem prob;
    prob.c.assign(nv, 0.0);
    prob.c.back() = -1;
    prob.a0 = base.matrix();
    prob.a = null_ops_;
    prob.a.push_back(CMatrix::identity(8) * Complex(-1));
    std::vector<double> y0(nv, 0.0);
    y0.back() = min_eigenvalue(base) - 1;
    BarrierOptions opts;
    opts.mu_stop = 1e-10;
    const auto res = solve_lmi(prob, y0, opts);
    const double lambda = res.y.back();

    HermMat slack = base;
    for (std::size_t k = 0; k + 1 < nv; ++k) slack += HermMat(null_ops_[k] * Complex(res.y[k]));
    const HermMat x = slack;
    slack -= lambda * HermMat::identity(8);

    // Dual side: project μA⁻¹ onto Sym(M ⊗ 1), shift to PSD and normalize.
    const HermMat w(res.dual);
    std::vector<double> wc(nb);
    for (std::size_t k = 0; k < nb; ++k) wc[k] = hs_inner(w, sym_basis_[k]);
    std::vector<double> cw(m, 0.0), mm(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < nb; ++k) cw[i] += c_[i][k] * wc[k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mm[i] += gram_inv_[i * m + j] * cw[j];
    HermMat mop = HermMat::zero(4);
    for (std::size_t i = 0; i < m; ++i) mop += mm[i] * constraint_ops_[i];
    const HermMat wsym = symmetrize_bb(kron(mop, HermMat::identity(2)));
    const double shift = std::min(0.0, min_eigenvalue(wsym));
    mop -= shift * HermMat::identity(4);
    const double norm = 2 * mop.trace();
    SdpVerdict v;
    v.iterations = res.iterations;
    v.converged = res.converged;
    v.objective = lambda;
    v.margin = 8 * lambda;
    v.primal_solution = x;
    if (norm > 0) {
        const HermMat k = (8 / norm) * mop;
        const double upper = hs_inner(k, rho);
        v.gap = upper - v.margin;
        for (int a = 0; a < 4; ++a)
            for (int bb = 0; bb < 4; ++bb)
                if (a != 0 || bb != 0) v.dual_solution.push_back(hs_inner(k, kron(pauli(a), pauli(bb))) / 4);
        v.slackness_residual = ((1 / norm) * wsym.matrix() * slack.matrix()).frobenius_norm();
        if (v.margin >= -tol) {
            v.status = VerdictStatus::extendible;
        } else if (upper < -tol) {
            v.status = VerdictStatus::not_extendible;
        }
    } else if (v.margin >= -tol) {
        v.status = VerdictStatus::extendible;
    }
    return v;
}

SdpVerdict check_extendible_numeric(const HermMat& rho, double tol) {
    static const FullExtensionSdp sdp;
    return sdp.solve(rho, tol);
}

}  // namespace symext
