#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "symext/analytic.h"
#include "symext/distill.h"
#include "symext/errors.h"
#include "symext/qkd.h"

using namespace symext;

namespace {

const double kSqrt2 = std::sqrt(2.0);

void expect_p(const BellProbs& p, std::array<double, 4> want, double tol) {
    const auto got = p.p();
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], tol) << "component " << i;
}

// α3 range on the fiber over (α1, α2)
std::vector<double> fiber(double a1, double a2, int n) {
    const double r = std::max(0.0, (1 - a1) / kSqrt2);
    std::vector<double> out;
    for (int k = 0; k <= n; ++k) out.push_back(-r + 2 * r * k / n);
    (void)a2;
    return out;
}

}  // namespace

TEST(SchemeState, Examples) {
    expect_p(scheme_state({Scheme::six_state, 0.2, 0}), {0.7, 0.1, 0.1, 0.1}, 1e-15);
    expect_p(scheme_state({Scheme::bb84, 0.2, 0}), {0.6, 0.2, 0, 0.2}, 1e-15);
    expect_p(scheme_state({Scheme::bb84, 0.2, 0.1}), {0.7, 0.1, 0.1, 0.1}, 1e-15);
}

TEST(SchemeState, RangeChecks) {
    EXPECT_THROW(scheme_state({Scheme::bb84, 0.5, 0}), DomainError);
    EXPECT_THROW(scheme_state({Scheme::bb84, -0.1, 0}), DomainError);
    EXPECT_THROW(scheme_state({Scheme::bb84, 0.2, 0.11}), DomainError);
    EXPECT_THROW(scheme_state({Scheme::six_state, 0.2, 0.05}), DomainError);
    EXPECT_THROW(parse_scheme("b92"), DomainError);
    EXPECT_EQ(parse_scheme("six-state"), Scheme::six_state);
    EXPECT_EQ(parse_scheme("bb84"), Scheme::bb84);
}

TEST(Bb84WorstCase, Examples) {
    const auto a = bb84_worst_case(0.2);
    expect_p(a, {0.6, 0.2, 0, 0.2}, 1e-15);
    EXPECT_NEAR(d_c(a), 0, 1e-15);
    const auto b = bb84_worst_case(0.1);
    expect_p(b, {0.8, 0.1, 0, 0.1}, 1e-15);
    EXPECT_NEAR(d_c(b), std::log2(0.49 / 0.09), 1e-14);
    expect_p(bb84_worst_case(0), {1, 0, 0, 0}, 0);
}

TEST(Bb84WorstCase, MinimizesDcOverT) {
    for (double q = 0.01; q < 0.5; q += 0.01) {
        const double worst = std::abs(bb84_worst_case(q).no_flip_diff());
        for (int k = 0; k <= 100; ++k) {
            const double t = std::min(q / 2, q / 2 * k / 100.0);
            EXPECT_GE(std::abs(scheme_state({Scheme::bb84, q, t}).no_flip_diff()), worst - 1e-15) << q << ' ' << t;
        }
    }
    // above q = 1/3 the minimizer leaves t = 0
    EXPECT_NEAR(bb84_worst_t(0.4), 0.1, 1e-15);
    EXPECT_EQ(bb84_worst_t(0.3), 0);
}

TEST(Threshold, SixStateAndBb84) {
    EXPECT_NEAR(threshold(Scheme::six_state, 1e-9), (5 - std::sqrt(5.0)) / 10, 1e-9);
    EXPECT_NEAR(threshold(Scheme::bb84, 1e-9), 0.2, 1e-9);
    EXPECT_THROW(threshold(Scheme::bb84, 0), DomainError);
}

TEST(Threshold, SixStateThresholdStateIsExtendible) {
    const double q = (5 - std::sqrt(5.0)) / 10;
    const auto p = scheme_state({Scheme::six_state, q, 0});
    EXPECT_TRUE(has_symext(p_to_alpha(p)));
    const auto r = classify_region(p_to_alpha(p).alpha1, p_to_alpha(p).alpha2).region;
    EXPECT_TRUE(r == Region::A || r == Region::B);
}

TEST(Threshold, BreakingBelowAndStableAbove) {
    for (double q = 0.02; q < 0.5; q += 0.02) {
        const auto p = scheme_state({Scheme::six_state, q, 0});
        const double qmax = (5 - std::sqrt(5.0)) / 10;
        if (q < qmax) {
            const auto r = rounds_to_break(p);
            ASSERT_TRUE(r.has_value()) << q;
            BellProbs s = p;
            for (int k = 0; k < *r; ++k) s = bstep(s).p;
            EXPECT_FALSE(has_symext(s));
        } else {
            BellProbs s = p;
            for (int k = 0; k < 20; ++k) {
                s = bstep(s).p;
                ASSERT_TRUE(has_symext(s)) << q << ' ' << k;
            }
            for (int n = 3; n <= 9; ++n) EXPECT_TRUE(has_symext(p_to_alpha(cad(p, n).p)));
        }
    }
}

TEST(Region, Examples) {
    EXPECT_EQ(classify_region(0, 0).region, Region::S);
    EXPECT_EQ(classify_region(1, 0).region, Region::S);
    // every curve passes through (0, 1/√2); the point goes to the first region
    EXPECT_EQ(classify_region(0, 1 / kSqrt2).region, Region::S);
    EXPECT_EQ(classify_region(0.9, 0.1).region, Region::A);
    EXPECT_EQ(classify_region(0.5, 0.7).region, Region::B);
    EXPECT_EQ(classify_region(0.5, 0.95).region, Region::C);
    EXPECT_EQ(classify_region(0.9, 1.0).region, Region::D);
    EXPECT_THROW(classify_region(1.1, 0), NotAStateError);
    EXPECT_THROW(classify_region(-0.5, 0.5), NotAStateError);
}

TEST(Region, MonotoneInAlpha2) {
    for (double a1 = 0.01; a1 < 1; a1 += 0.01) {
        int prev = 0;
        for (double a2 = 0; a2 <= kSqrt2; a2 += 0.001) {
            if (!in_projected_state_space(a1, a2)) break;
            const int r = static_cast<int>(classify_region(a1, a2).region);
            ASSERT_GE(r, prev) << a1 << ' ' << a2;
            prev = r;
        }
    }
}

TEST(Region, SeparableTestMatchesPpt) {
    for (int i = 0; i <= 60; ++i) {
        for (int j = 0; j <= 60; ++j) {
            const double a1 = -1 + 2.0 * i / 60, a2 = kSqrt2 * j / 60;
            if (!in_projected_state_space(a1, a2)) continue;
            if (std::abs(a1 + kSqrt2 * a2 - 1) < 1e-9) continue;
            EXPECT_EQ(classify_region(a1, a2).region == Region::S, fiber_has_separable_state(a1, a2)) << a1 << ' ' << a2;
        }
    }
}

TEST(Region, MeaningOnTheFiber) {
    // A, B: every α3 extendible; C: some; D: none; A also has d_c ≤ 0
    for (int i = 1; i < 80; ++i) {
        for (int j = 1; j < 80; ++j) {
            const double a1 = -1 + 2.0 * i / 80, a2 = kSqrt2 * j / 80;
            if (!in_projected_state_space(a1, a2)) continue;
            const Region r = classify_region(a1, a2).region;
            // stay off the curves
            bool stable = true;
            for (double da : {-2e-3, 2e-3})
                for (double db : {-2e-3, 2e-3})
                    stable = stable && in_projected_state_space(a1 + da, a2 + db) &&
                             classify_region(a1 + da, a2 + db).region == r;
            if (!stable) continue;
            int ext = 0, total = 0;
            for (double a3 : fiber(a1, a2, 40)) {
                const AlphaCoords al{1, a1, a2, a3};
                if (!al.in_state_space()) continue;
                ++total;
                ext += has_symext(al);
            }
            ASSERT_GT(total, 0);
            switch (r) {
                // S only promises a separable state somewhere on the fiber
                case Region::S: EXPECT_GT(ext, 0) << a1 << ' ' << a2; break;
                case Region::A:
                case Region::B: EXPECT_EQ(ext, total) << a1 << ' ' << a2; break;
                case Region::C:
                    EXPECT_GT(ext, 0) << a1 << ' ' << a2;
                    EXPECT_LT(ext, total) << a1 << ' ' << a2;
                    break;
                case Region::D:
                    // outside the outer ellipse the α3 = 0 state can still be
                    // extendible through the convex hull (second inequality);
                    // only there may the fiber contain extendible states
                    if (has_symext(AlphaCoords{1, a1, a2, 0})) {
                        EXPECT_GE(a2 * a2 - 2 * kSqrt2 * a1 * a2, -1e-12) << a1 << ' ' << a2;
                    } else {
                        EXPECT_EQ(ext, 0) << a1 << ' ' << a2;
                    }
                    break;
            }
            if (r == Region::A) {
                EXPECT_LE(d_c_alpha(a1, a2), 0);
            } else if (r != Region::S) {
                EXPECT_GT(d_c_alpha(a1, a2), 0);
            }
        }
    }
}

TEST(RegionScan, SmallGrid) {
    const auto recs = region_scan({3, 3, false, 1});
    EXPECT_LE(recs.size(), 9u);
    EXPECT_GE(recs.size(), 6u);
    for (const auto& r : recs) EXPECT_TRUE(in_projected_state_space(r.verdict.alpha1, r.verdict.alpha2));
    EXPECT_THROW(region_scan({1, 3, false, 1}), DomainError);
}

TEST(RegionScan, DeterministicAcrossThreads) {
    const auto a = region_scan({64, 64, true, 1});
    const auto b = region_scan({64, 64, true, 7});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].verdict.alpha1, b[i].verdict.alpha1);
        EXPECT_EQ(a[i].verdict.alpha2, b[i].verdict.alpha2);
        EXPECT_EQ(a[i].verdict.region, b[i].verdict.region);
        EXPECT_EQ(a[i].symext, b[i].symext);
    }
    // both-signs output is mirror symmetric in α2
    std::size_t neg = 0, pos = 0;
    for (const auto& r : a) (r.verdict.alpha2 < 0 ? neg : pos) += 1;
    EXPECT_GT(neg, 0u);
    EXPECT_EQ(pos, neg);
}

TEST(RegionScan, ThreadsFromEnvironment) {
    EXPECT_EQ(scan_threads(3), 3u);
    setenv("SYMEXT_THREADS", "2", 1);
    EXPECT_EQ(scan_threads(0), 2u);
    setenv("SYMEXT_THREADS", "junk", 1);
    EXPECT_GE(scan_threads(0), 1u);
    unsetenv("SYMEXT_THREADS");
}
