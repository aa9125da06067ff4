#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symext/bell_state.h"

namespace symext {

struct StepResult {
    BellProbs p;
    double success_prob;
};

/// One successful round of B-steps on a pair of copies. success_prob is
/// (p_I + p_z)² + (p_x + p_y)².
StepResult bstep(const BellProbs& p);

/// Classical advantage distillation on blocks of n ≥ 1 copies. In parity
/// coordinates every coordinate is raised to the n-th power and renormalized.
/// DegenerateInputError if the success probability underflows 1e-300.
StepResult cad(const BellProbs& p, int n);

/// log2((p_I − p_z)² / ((p_I + p_z)(p_x + p_y))) on the extended reals.
/// −inf when p_I = p_z, +inf when p_x = p_y = 0; DomainError when both hold.
double d_c(const BellProbs& p);

/// The same quantity from the (α1, α2) projection: log2(2α2² / (1 − α1²)).
/// NaN at the vertex α1 = ±1, α2 = 0 where it is undefined.
double d_c_alpha(double alpha1, double alpha2);

/// Smallest r with 2^r·d_c(p) ≥ 2, or nullopt when d_c(p) ≤ 0. Checks that the
/// state after r B-steps has no symmetric extension (InternalError otherwise).
/// Capped at 64 rounds.
std::optional<int> rounds_to_break(const BellProbs& p);

/// α2 ≥ 0 on the constant-D_C ellipse α1² + 2^{1−d}·α2² = 1. DomainError unless |α1| < 1.
double constant_dc_alpha2(double alpha1, double d);

enum class StepKind { input, bstep, cad, pstep };
enum class Termination { broke_extension, max_rounds, not_distillable };

std::string to_string(StepKind kind);
std::string to_string(Termination t);

struct TraceRecord {
    StepKind kind;
    BellProbs p;
    AlphaCoords alpha;
    double d_c;
    double success_prob;       // of this step alone
    double total_success;      // product over the run so far
    bool extendible;
};

struct DistillTrace {
    std::vector<TraceRecord> steps;
    Termination terminated = Termination::max_rounds;
};

struct DistillOptions {
    int max_rounds = 20;
    /// 2 runs B-steps; any other n ≥ 2 runs CAD with that block size.
    int block_size = 2;
    /// Insert a P-step marker after each round. P-steps leave the state as is.
    bool psteps = false;
};

/// Rounds of B-steps or CAD until the state loses its symmetric extension or
/// max_rounds is reached. A run that never breaks the extension ends with
/// not_distillable if d_c ≤ 0, else max_rounds.
DistillTrace distill(const BellProbs& p, const DistillOptions& options = {});

}  // namespace symext
