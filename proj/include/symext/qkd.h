#pragma once

#include <string>
#include <vector>

#include "symext/bell_state.h"

namespace symext {

enum class Scheme { six_state, bb84 };

std::string to_string(Scheme s);
/// "six-state" or "bb84"; DomainError otherwise.
Scheme parse_scheme(const std::string& name);

struct SchemeState {
    Scheme scheme = Scheme::six_state;
    double q = 0;  // QBER in [0, 1/2)
    double t = 0;  // bb84 only, in [0, q/2]
};

/// six-state: (1 − 3q/2, q/2, q/2, q/2); bb84: (1−2q, q, 0, q) + t(1, −1, 1, −1).
/// DomainError when q or t is out of range.
BellProbs scheme_state(const SchemeState& s);

/// The t ∈ [0, q/2] minimizing |p_I − p_z| (and so d_c): 0 for q ≤ 1/3,
/// (3q − 1)/2 above.
double bb84_worst_t(double q);

/// scheme_state(bb84, q, bb84_worst_t(q)); checks against 16 sampled t that
/// nothing smaller is available (InternalError otherwise).
BellProbs bb84_worst_case(double q);

/// Largest QBER for which the worst-case state still has d_c > 0, by bisection
/// on [0, 0.4] to within tol (at most 200 halvings). InternalError unless d_c
/// changes sign exactly once on a 400-cell grid of the bracket.
double threshold(Scheme scheme, double tol = 1e-9);

enum class Region { S, A, B, C, D };

std::string to_string(Region r);

struct RegionVerdict {
    Region region;
    double alpha1;
    double alpha2;
};

/// Whether some α3 makes (α1, α2, α3) a state: α1 ≤ 1 and α1 − √2|α2| ≥ −1 (slack 1e-12).
bool in_projected_state_space(double alpha1, double alpha2);

/// First match in S, A, B, C, D:
///   S  α1 + √2|α2| ≤ 1                 (a separable state lies on the fiber)
///   A  2α2² ≤ 1 − α1²                  (d_c ≤ 0)
///   B  (9/4)(α1 − 1/3)² + (3/2)α2² ≤ 1 (inner ellipse)
///   C  4(α1 − 1/2)² + α2² ≤ 1          (outer ellipse)
///   D  otherwise
/// Boundary points go to the earlier region. NotAStateError outside the projected space.
RegionVerdict classify_region(double alpha1, double alpha2);

/// PPT search for a separable state on the fiber over `samples` values of α3
/// spread over its allowed range, α3 = 0 included.
bool fiber_has_separable_state(double alpha1, double alpha2, int samples = 64);

struct ScanOptions {
    int n_alpha1 = 256;
    int n_alpha2 = 256;
    /// α2 over [−√2, √2] instead of [0, √2].
    bool both_signs = false;
    /// 0: SYMEXT_THREADS if set, else the hardware concurrency.
    unsigned threads = 0;
};

struct ScanRecord {
    RegionVerdict verdict;
    double d_c;   // NaN at the vertex (1, 0)
    bool symext;  // has_symext at α3 = 0
};

/// Grid over α1 ∈ [−1, 1] (outer index) and α2 (inner index), skipping points
/// outside the projected state space. Output order does not depend on threads.
std::vector<ScanRecord> region_scan(const ScanOptions& options);

/// Worker count used by region_scan for a given request.
unsigned scan_threads(unsigned requested);

}  // namespace symext
