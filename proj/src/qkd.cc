#include "symext/qkd.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "symext/analytic.h"
#include "symext/distill.h"
#include "symext/errors.h"

namespace symext {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kEdgeSlack = 1e-12;

void require_q(double q) {
    if (!(q >= 0 && q < 0.5)) throw DomainError("scheme_state: q must lie in [0, 0.5), got " + std::to_string(q));
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::six_state ? "six-state" : "bb84"; }

Scheme parse_scheme(const std::string& name) {
    if (name == "six-state" || name == "six_state") return Scheme::six_state;
    if (name == "bb84") return Scheme::bb84;
    throw DomainError("unknown scheme '" + name + "' (expected six-state or bb84)");
}

BellProbs scheme_state(const SchemeState& s) {
    require_q(s.q);
    const double q = s.q;
    if (s.scheme == Scheme::six_state) {
        if (s.t != 0) throw DomainError("scheme_state: t applies to bb84 only");
        return BellProbs::from_parity(1 - q, 1 - 2 * q, q, 0);
    }
    if (!(s.t >= 0 && s.t <= q / 2)) throw DomainError("scheme_state: t must lie in [0, q/2]");
    return BellProbs::from_parity(1 - q, 1 - 3 * q + 2 * s.t, q, q - 2 * s.t);
}

double bb84_worst_t(double q) {
    require_q(q);
    return q <= 1.0 / 3.0 ? 0.0 : std::min((3 * q - 1) / 2, q / 2);
}

BellProbs bb84_worst_case(double q) {
    const double t = bb84_worst_t(q);
    const BellProbs worst = scheme_state({Scheme::bb84, q, t});
    if (q > 0) {
        const double b = std::abs(worst.no_flip_diff());
        for (int k = 1; k <= 16; ++k) {
            const BellProbs other = scheme_state({Scheme::bb84, q, q / 2 * k / 16.0});
            if (std::abs(other.no_flip_diff()) < b - 1e-15) {
                throw InternalError("bb84_worst_case: a sampled t gives a smaller d_c");
            }
        }
    }
    return worst;
}

double threshold(Scheme scheme, double tol) {
    if (!(tol > 0)) throw DomainError("threshold: tol must be positive");
    auto positive = [scheme](double q) {
        const BellProbs p = scheme == Scheme::six_state ? scheme_state({Scheme::six_state, q, 0}) : bb84_worst_case(q);
        return d_c(p) > 0;
    };
    double lo = 0.0, hi = 0.4;
    int changes = 0;
    bool prev = positive(lo);
    for (int k = 1; k <= 400; ++k) {
        const bool cur = positive(lo + (hi - lo) * k / 400.0);
        changes += cur != prev;
        prev = cur;
    }
    if (!positive(lo) || positive(hi) || changes != 1) {
        throw InternalError("threshold: d_c does not change sign exactly once on [0, 0.4]");
    }
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (positive(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string to_string(Region r) {
    switch (r) {
        case Region::S: return "S";
        case Region::A: return "A";
        case Region::B: return "B";
        case Region::C: return "C";
        case Region::D: return "D";
    }
    return "?";
}

bool in_projected_state_space(double alpha1, double alpha2) {
    return alpha1 <= 1 + kEdgeSlack && alpha1 - kSqrt2 * std::abs(alpha2) >= -1 - kEdgeSlack;
}

RegionVerdict classify_region(double a1, double a2) {
    if (!std::isfinite(a1) || !std::isfinite(a2) || !in_projected_state_space(a1, a2)) {
        throw NotAStateError("classify_region: point lies outside the projected state space");
    }
    const double s2 = a2 * a2;
    Region r = Region::D;
    if (a1 + kSqrt2 * std::abs(a2) <= 1 + kEdgeSlack) {
        r = Region::S;
    } else if (2 * s2 <= 1 - a1 * a1 + kEdgeSlack) {
        r = Region::A;
    } else if (2.25 * (a1 - 1.0 / 3.0) * (a1 - 1.0 / 3.0) + 1.5 * s2 <= 1 + kEdgeSlack) {
        r = Region::B;
    } else if (4 * (a1 - 0.5) * (a1 - 0.5) + s2 <= 1 + kEdgeSlack) {
        r = Region::C;
    }
    return {r, a1, a2};
}

bool fiber_has_separable_state(double a1, double a2, int samples) {
    if (!in_projected_state_space(a1, a2)) throw NotAStateError("fiber_has_separable_state: point outside state space");
    if (samples < 1) throw DomainError("fiber_has_separable_state: need at least one sample");
    const double r = std::max(0.0, (1 - a1) / kSqrt2);
    const int half = samples / 2;
    for (int k = 0; k < samples; ++k) {
        const double a3 = half == 0 ? 0.0 : r * (k - half) / half;
        AlphaCoords al{1, std::min(a1, 1.0), a2, a3};
        std::optional<BellProbs> p;
        try {
            p = alpha_to_p(al);
        } catch (const NotAStateError&) {
            continue;
        }
        if (is_separable(*p)) return true;
    }
    return false;
}

unsigned scan_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SYMEXT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ScanRecord> region_scan(const ScanOptions& options) {
    if (options.n_alpha1 < 2 || options.n_alpha2 < 2) throw DomainError("region_scan: resolution must be >= 2");
    const std::size_t n1 = options.n_alpha1, n2 = options.n_alpha2;
    const double a2_lo = options.both_signs ? -kSqrt2 : 0.0;
    const double a2_hi = kSqrt2;

    std::vector<std::optional<ScanRecord>> slots(n1 * n2);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t i = idx / n2, j = idx % n2;
            const double a1 = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n1 - 1);
            const double a2 = a2_lo + (a2_hi - a2_lo) * static_cast<double>(j) / static_cast<double>(n2 - 1);
            if (!in_projected_state_space(a1, a2)) continue;
            const AlphaCoords al{1, a1, a2, 0};
            slots[idx] = ScanRecord{classify_region(a1, a2), d_c_alpha(a1, a2), has_symext(al)};
        }
    };

    const unsigned nt = std::min<std::size_t>(scan_threads(options.threads), n1 * n2);
    if (nt <= 1) {
        work(0, slots.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (slots.size() + nt - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            const std::size_t b = t * chunk, e = std::min(slots.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<ScanRecord> out;
    for (auto& s : slots)
        if (s) out.push_back(*s);
    return out;
}

}  // namespace symext
