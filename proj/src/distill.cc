#include "symext/distill.h"

#include <cmath>
#include <limits>

#include "symext/analytic.h"
#include "symext/errors.h"

namespace symext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBreakRounds = 64;

// d_c, with NaN where it is undefined (trace records must not throw).
double d_c_or_nan(const BellProbs& p) {
    if (p.wide_no_flip_diff().is_zero() && (p.wide_no_flip_sum() * p.wide_flip_sum()).is_zero()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return d_c(p);
}

StepResult power_map(const BellProbs& p, int n) {
    const WideReal a = pow(p.wide_no_flip_sum(), n);
    const WideReal b = pow(p.wide_no_flip_diff(), n);
    const WideReal c = pow(p.wide_flip_sum(), n);
    const WideReal d = pow(p.wide_flip_diff(), n);
    const WideReal s = a + c;
    if (!(s.to_double() >= 1e-300)) throw DegenerateInputError("cad: success probability underflows");
    return {BellProbs::from_parity(a / s, b / s, c / s, d / s), s.to_double()};
}

}  // namespace

StepResult bstep(const BellProbs& p) {
    const WideReal &a = p.wide_no_flip_sum(), &b = p.wide_no_flip_diff(), &c = p.wide_flip_sum(),
                   &d = p.wide_flip_diff();
    const WideReal s = a * a + c * c;
    if (!(s.sign() > 0)) throw DegenerateInputError("bstep: parities never agree");
    return {BellProbs::from_parity(a * a / s, b * b / s, c * c / s, d * d / s), s.to_double()};
}

StepResult cad(const BellProbs& p, int n) {
    if (n < 1) throw DomainError("cad: block size must be at least 1");
    if (n == 1) return {p, 1.0};
    return power_map(p, n);
}

double d_c(const BellProbs& p) {
    const WideReal& b = p.wide_no_flip_diff();
    const WideReal den = p.wide_no_flip_sum() * p.wide_flip_sum();
    if (b.is_zero() && den.is_zero()) throw DomainError("d_c: undefined when p_I = p_z and p_x = p_y = 0");
    if (b.is_zero()) return -kInf;
    if (den.is_zero()) return kInf;
    return (b * b / den).log2_abs();
}

double d_c_alpha(double alpha1, double alpha2) {
    const double num = 2 * alpha2 * alpha2;
    const double den = 1 - alpha1 * alpha1;
    if (num == 0 && den <= 0) return std::numeric_limits<double>::quiet_NaN();
    if (num == 0) return -kInf;
    if (den <= 0) return kInf;
    return std::log2(num / den);
}

std::optional<int> rounds_to_break(const BellProbs& p) {
    const double d = d_c(p);
    if (!(d > 0)) return std::nullopt;
    int r = 0;
    while (std::ldexp(d, r) < 2) {
        if (++r > kMaxBreakRounds) throw SolverFailure("rounds_to_break: exceeded 64 rounds");
    }
    BellProbs cur = p;
    for (int i = 0; i < r; ++i) cur = bstep(cur).p;
    if (has_symext(cur)) {
        throw InternalError("rounds_to_break: state with d_c >= 2 still has a symmetric extension");
    }
    return r;
}

double constant_dc_alpha2(double alpha1, double d) {
    if (!(std::abs(alpha1) < 1)) throw DomainError("constant_dc_alpha2: needs |alpha1| < 1");
    if (std::isnan(d)) throw DomainError("constant_dc_alpha2: d is NaN");
    return std::sqrt((1 - alpha1 * alpha1) * std::exp2(d - 1));
}

std::string to_string(StepKind kind) {
    switch (kind) {
        case StepKind::input: return "input";
        case StepKind::bstep: return "bstep";
        case StepKind::cad: return "cad";
        case StepKind::pstep: return "pstep";
    }
    return "unknown";
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::broke_extension: return "broke_extension";
        case Termination::max_rounds: return "max_rounds";
        case Termination::not_distillable: return "not_distillable";
    }
    return "unknown";
}

DistillTrace distill(const BellProbs& p, const DistillOptions& options) {
    if (options.max_rounds < 0) throw DomainError("distill: max_rounds must be non-negative");
    if (options.block_size < 2) throw DomainError("distill: block size must be at least 2");

    auto record = [](StepKind kind, const BellProbs& q, double success, double total) {
        const AlphaCoords a = p_to_alpha(q);
        return TraceRecord{kind, q, a, d_c_or_nan(q), success, total, has_symext(q)};
    };

    DistillTrace trace;
    trace.steps.push_back(record(StepKind::input, p, 1.0, 1.0));
    if (!trace.steps.back().extendible) {
        trace.terminated = Termination::broke_extension;
        return trace;
    }
    BellProbs cur = p;
    double total = 1;
    for (int round = 0; round < options.max_rounds; ++round) {
        const bool b = options.block_size == 2;
        const StepResult next = b ? bstep(cur) : cad(cur, options.block_size);
        cur = next.p;
        total *= next.success_prob;
        trace.steps.push_back(record(b ? StepKind::bstep : StepKind::cad, cur, next.success_prob, total));
        if (!trace.steps.back().extendible) {
            trace.terminated = Termination::broke_extension;
            return trace;
        }
        if (options.psteps) {
            auto marker = trace.steps.back();
            marker.kind = StepKind::pstep;
            marker.success_prob = 1;
            trace.steps.push_back(marker);
        }
    }
    trace.terminated = d_c_or_nan(cur) > 0 ? Termination::max_rounds : Termination::not_distillable;
    return trace;
}

}  // namespace symext
