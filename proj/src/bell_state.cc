#include "symext/bell_state.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "symext/errors.h"

namespace symext {

namespace {

constexpr double kNegativeSlack = 1e-12;
constexpr double kNormalizationSlack = 1e-9;
constexpr double kDensityTolerance = 1e-10;
constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

BellProbs BellProbs::from_p(const std::array<double, 4>& p) {
    std::array<double, 4> q = p;
    double sum = 0;
    for (std::size_t j = 0; j < 4; ++j) {
        if (!std::isfinite(q[j]) || q[j] < -kNegativeSlack) {
            throw NotAStateError("BellProbs: component " + std::to_string(j) + " = " + std::to_string(q[j]) +
                                 " is not a probability");
        }
        q[j] = std::max(q[j], 0.0);
        sum += q[j];
    }
    if (std::abs(sum - 1) > kNormalizationSlack) {
        throw NotAStateError("BellProbs: components sum to " + std::to_string(sum));
    }
    const double s0 = (q[0] + q[3]) / sum;
    const double d0 = (q[0] - q[3]) / sum;
    const double s1 = (q[1] + q[2]) / sum;
    const double d1 = (q[1] - q[2]) / sum;
    return BellProbs(Raw{}, s0, d0, s1, d1);
}

BellProbs BellProbs::from_parity(const WideReal& no_flip_sum, const WideReal& no_flip_diff, const WideReal& flip_sum,
                                 const WideReal& flip_diff) {
    for (const WideReal* x : {&no_flip_sum, &no_flip_diff, &flip_sum, &flip_diff}) {
        if (!x->is_finite()) throw NotAStateError("BellProbs: non-finite parity coordinate");
    }
    // Each p_j is half a sum plus/minus a difference.
    if (no_flip_sum - abs(no_flip_diff) < -2 * kNegativeSlack || flip_sum - abs(flip_diff) < -2 * kNegativeSlack) {
        throw NotAStateError("BellProbs: parity coordinates imply a negative component");
    }
    const WideReal sum = no_flip_sum + flip_sum;
    if (std::abs(sum.to_double() - 1) > kNormalizationSlack) {
        throw NotAStateError("BellProbs: components sum to " + std::to_string(sum.to_double()));
    }
    auto clamp = [](const WideReal& x, const WideReal& r) { return x > r ? r : (x < -r ? -r : x); };
    const WideReal s0 = no_flip_sum.sign() > 0 ? no_flip_sum / sum : WideReal();
    const WideReal s1 = flip_sum.sign() > 0 ? flip_sum / sum : WideReal();
    return BellProbs(Raw{}, s0, clamp(no_flip_diff / sum, s0), s1, clamp(flip_diff / sum, s1));
}

std::array<double, 4> BellProbs::p() const {
    return {
        0.5 * (no_flip_sum_ + no_flip_diff_).to_double(),
        0.5 * (flip_sum_ + flip_diff_).to_double(),
        0.5 * (flip_sum_ - flip_diff_).to_double(),
        0.5 * (no_flip_sum_ - no_flip_diff_).to_double(),
    };
}

double BellProbs::operator[](BellIndex j) const { return p()[static_cast<std::size_t>(j)]; }

bool AlphaCoords::in_state_space(double tol) const { return face_slack() >= -tol; }

double AlphaCoords::face_slack() const {
    return std::min({alpha0 + alpha1 + kSqrt2 * alpha2, alpha0 + alpha1 - kSqrt2 * alpha2,
                     alpha0 - alpha1 + kSqrt2 * alpha3, alpha0 - alpha1 - kSqrt2 * alpha3});
}

AlphaCoords p_to_alpha(const BellProbs& p) {
    return AlphaCoords{
        .alpha0 = p.no_flip_sum() + p.flip_sum(),
        .alpha1 = p.no_flip_sum() - p.flip_sum(),
        .alpha2 = kSqrt2 * p.no_flip_diff(),
        .alpha3 = kSqrt2 * p.flip_diff(),
    };
}

BellProbs alpha_to_p(const AlphaCoords& a) {
    if (std::abs(a.alpha0 - 1) > kNegativeSlack) {
        throw NotAStateError("alpha_to_p: alpha0 must be 1, got " + std::to_string(a.alpha0));
    }
    if (!a.in_state_space()) {
        throw NotAStateError("alpha_to_p: point lies outside the Bell-diagonal tetrahedron");
    }
    return BellProbs::from_parity(0.5 * (1 + a.alpha1), a.alpha2 / kSqrt2, 0.5 * (1 - a.alpha1), a.alpha3 / kSqrt2);
}

std::array<Complex, 4> bell_vector(BellIndex j) {
    const double h = 1 / kSqrt2;
    switch (j) {
        case BellIndex::I: return {h, 0, 0, h};
        case BellIndex::X: return {0, h, h, 0};
        case BellIndex::Y: return {0, h, -h, 0};
        case BellIndex::Z: return {h, 0, 0, -h};
    }
    throw DomainError("bell_vector: bad index");
}

HermMat to_density_matrix(const BellProbs& p) {
    HermMat rho = HermMat::zero(4);
    const auto probs = p.p();
    for (BellIndex j : kBellIndices) {
        const auto v = bell_vector(j);
        rho += probs[static_cast<std::size_t>(j)] * HermMat::projector(v);
    }
    return rho;
}

BellProbs twirl(const HermMat& rho) {
    if (rho.dim() != 4) throw DimensionError("twirl: expected a 4x4 density matrix");
    if (std::abs(rho.trace() - 1) > kDensityTolerance) {
        throw NotAStateError("twirl: input trace is " + std::to_string(rho.trace()));
    }
    if (min_eigenvalue(rho) < -kDensityTolerance) throw NotAStateError("twirl: input is not positive semidefinite");
    std::array<double, 4> p{};
    for (BellIndex j : kBellIndices) {
        const auto v = bell_vector(j);
        const auto rv = rho.matrix().apply(v);
        Complex acc = 0;
        for (std::size_t k = 0; k < 4; ++k) acc += std::conj(v[k]) * rv[k];
        p[static_cast<std::size_t>(j)] = acc.real();
    }
    return BellProbs::from_p(p);
}

std::array<double, 3> qber(const BellProbs& p) {
    const auto q = p.p();
    return {1 - q[0] - q[1], 1 - q[0] - q[2], 1 - q[0] - q[3]};
}

bool is_separable(const BellProbs& p) {
    return min_eigenvalue(partial_transpose(to_density_matrix(p), Subsystem::B)) >= -kNegativeSlack;
}

AlphaCoords sample_uniform_alpha(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a1(-1.0, 1.0);
    std::uniform_real_distribution<double> a23(-kSqrt2, kSqrt2);
    while (true) {
        AlphaCoords a{1, a1(rng), a23(rng), a23(rng)};
        if (a.face_slack() >= 0) return a;
    }
}

BellProbs permute(const BellProbs& p, const std::array<std::size_t, 4>& perm) {
    std::array<bool, 4> seen{};
    for (std::size_t i : perm) {
        if (i > 3 || seen[i]) throw DomainError("permute: not a permutation of {0,1,2,3}");
        seen[i] = true;
    }
    const auto q = p.p();
    return BellProbs::from_p({q[perm[0]], q[perm[1]], q[perm[2]], q[perm[3]]});
}

}  // namespace symext
