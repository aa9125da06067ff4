#include "lmi_barrier.h"

#include <cmath>
#include <optional>

#include "symext/errors.h"

namespace symext::detail {

namespace {

constexpr double kStallDecrement = 1e-3;

struct Factor {
    CMatrix inverse;
    double log_det = 0;
};

// Cholesky of a Hermitian matrix held as CMatrix; nullopt unless positive definite.
std::optional<Factor> factor(const CMatrix& m) {
    const std::size_t n = m.rows();
    CMatrix l(n, n);
    double log_det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0)) return std::nullopt;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        log_det += 2 * std::log(ljj);
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    // L⁻¹ by forward substitution, then A⁻¹ = L⁻† L⁻¹.
    CMatrix li(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        li(j, j) = 1.0 / l(j, j).real();
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = 0;
            for (std::size_t k = j; k < i; ++k) s -= l(i, k) * li(k, j);
            li(i, j) = s / l(i, i).real();
        }
    }
    CMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Complex s = 0;
            for (std::size_t k = i; k < n; ++k) s += std::conj(li(k, i)) * li(k, j);
            inv(i, j) = s;
            inv(j, i) = std::conj(s);
        }
    }
    return Factor{std::move(inv), log_det};
}

CMatrix assemble(const LmiProblem& p, const std::vector<double>& y) {
    CMatrix m = p.a0;
    const std::size_t n2 = m.rows() * m.cols();
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] == 0) continue;
        const auto src = p.a[k].data();
        for (std::size_t e = 0; e < n2; ++e) m(e / m.cols(), e % m.cols()) += y[k] * src[e];
    }
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Solves h·x = b for symmetric positive definite h (row-major n×n), in place.
bool spd_solve(std::vector<double> h, std::size_t n, std::vector<double>& b) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = h[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= h[j * n + k] * h[j * n + k];
        if (!(d > 0)) return false;
        d = std::sqrt(d);
        h[j * n + j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = h[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= h[i * n + k] * h[j * n + k];
            h[i * n + j] = s / d;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= h[i * n + k] * b[k];
        b[i] = s / h[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= h[k * n + i] * b[k];
        b[i] = s / h[i * n + i];
    }
    return true;
}

struct NewtonSystem {
    std::vector<CMatrix> prod;
    std::vector<double> grad;
    std::vector<double> hess;

    NewtonSystem(std::size_t nv, std::size_t n) : prod(nv, CMatrix(n, n)), grad(nv), hess(nv * nv) {}

    std::vector<double> newton_step(const LmiProblem& p, const CMatrix& inv, double mu) {
        const std::size_t nv = p.a.size();
        const std::size_t n = inv.rows();
        for (std::size_t k = 0; k < nv; ++k) {
            prod[k] = inv * p.a[k];
            grad[k] = p.c[k] / mu - prod[k].trace().real();
        }
        for (std::size_t k = 0; k < nv; ++k) {
            for (std::size_t l = k; l < nv; ++l) {
                double s = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) s += (prod[k](i, j) * prod[l](j, i)).real();
                hess[k * nv + l] = hess[l * nv + k] = s;
            }
        }
        std::vector<double> step(nv);
        for (std::size_t k = 0; k < nv; ++k) step[k] = -grad[k];
        if (spd_solve(hess, nv, step)) return step;
        // Nearly dependent directions: regularize lightly and retry once.
        double tr = 0;
        for (std::size_t k = 0; k < nv; ++k) tr += hess[k * nv + k];
        auto reg = hess;
        for (std::size_t k = 0; k < nv; ++k) reg[k * nv + k] += 1e-14 * tr + 1e-300;
        for (std::size_t k = 0; k < nv; ++k) step[k] = -grad[k];
        if (!spd_solve(reg, nv, step)) throw SolverFailure("solve_lmi: singular Newton system");
        return step;
    }
};

}  // namespace

BarrierResult solve_lmi(const LmiProblem& problem, std::vector<double> y, const BarrierOptions& options) {
    const std::size_t nv = problem.a.size();
    const std::size_t n = problem.a0.rows();
    if (problem.c.size() != nv || y.size() != nv) throw DimensionError("solve_lmi: size mismatch");

    auto current = factor(assemble(problem, y));
    if (!current) throw DomainError("solve_lmi: starting point is not strictly feasible");

    BarrierResult out;
    double mu = options.mu_start;
    bool all_stages_ok = true;
    NewtonSystem sys(nv, n);

    while (true) {
        bool stage_ok = false;
        for (int it = 0; it < options.max_newton_per_stage; ++it) {
            ++out.iterations;
            const std::vector<double> step = sys.newton_step(problem, current->inverse, mu);
            const double slope = dot(sys.grad, step);
            const double decrement = -slope;
            stage_ok = decrement < kStallDecrement;
            if (decrement / 2 <= options.newton_tol) break;
            // f(y) = cᵀy/μ − log det A(y); compare increments to keep cᵀy/μ from swamping them.
            const double c_step = dot(problem.c, step) / mu;
            double t = 1;
            bool moved = false;
            while (t > 1e-14) {
                std::vector<double> trial(nv);
                for (std::size_t k = 0; k < nv; ++k) trial[k] = y[k] + t * step[k];
                if (auto f = factor(assemble(problem, trial))) {
                    const double df = t * c_step - (f->log_det - current->log_det);
                    if (df <= 0.25 * t * slope) {
                        y = std::move(trial);
                        current = std::move(f);
                        moved = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            // Short or failed steps near the centre mean the Hessian has run
            // into round-off; the iterate is already in the quadratic region.
            if (!moved || (stage_ok && t < 1.0 / 64)) break;
        }
        all_stages_ok = all_stages_ok && stage_ok;
        if (mu < options.mu_stop) break;
        mu *= options.mu_factor;
    }

    // Newton-corrected dual μ(A⁻¹ − A⁻¹·(Σ Δ_k a_k)·A⁻¹), which satisfies
    // Tr[W a_k] = c_k exactly rather than only at the central point.
    const std::vector<double> step = sys.newton_step(problem, current->inverse, mu);
    CMatrix s(n, n);
    for (std::size_t k = 0; k < nv; ++k) s += problem.a[k] * Complex(step[k]);
    out.dual = (current->inverse - current->inverse * s * current->inverse) * Complex(mu);
    out.y = y;
    out.objective = dot(problem.c, y);
    out.mu = mu;
    double dual_obj = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dual_obj += (out.dual(i, j) * problem.a0(j, i)).real();
    out.gap = out.objective + dual_obj;
    out.converged = all_stages_ok;
    return out;
}

}  // namespace symext::detail
