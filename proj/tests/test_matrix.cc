#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "symext/errors.h"
#include "symext/matrix.h"
#include "test_support.h"

using namespace symext;
using symext::testing::random_hermitian;

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);

HermMat phi_plus() {
    const std::array<Complex, 4> v = {kInvSqrt2, 0, 0, kInvSqrt2};
    return HermMat::projector(v);
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(max_abs_diff(kron(HermMat::identity(2), HermMat::identity(2)).matrix(), CMatrix::identity(4)), 0);
}

TEST(Kron, ZZIsDiagonal) {
    const std::array<double, 4> d = {1, -1, -1, 1};
    EXPECT_EQ(max_abs_diff(kron(pauli(3), pauli(3)).matrix(), HermMat::diagonal(d).matrix()), 0);
}

TEST(Kron, XXFixesPhiPlus) {
    const std::array<Complex, 4> v = {kInvSqrt2, 0, 0, kInvSqrt2};
    const auto w = kron(pauli(1), pauli(1)).matrix().apply(v);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(w[i] - v[i]), 0, 1e-15);
}

TEST(Kron, AssociativeAndTraceMultiplicative) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        const auto a = random_hermitian(rng, 2), b = random_hermitian(rng, 2), c = random_hermitian(rng, 2);
        EXPECT_LT(max_abs_diff(kron(kron(a, b), c).matrix(), kron(a, kron(b, c)).matrix()), 1e-12);
        EXPECT_NEAR(kron(a, b).trace(), a.trace() * b.trace(), 1e-12);
    }
}

TEST(HermMat, ConstructorSymmetrizes) {
    CMatrix m(2, 2);
    m(0, 1) = {1, 1e-14};
    m(1, 0) = {1, 0};
    const HermMat h(m);
    EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(HermMat, RejectsNonHermitian) {
    CMatrix m(2, 2);
    m(0, 1) = 1;
    EXPECT_THROW(HermMat{m}, DomainError);
}

TEST(Eigh, DiagonalSortsAscending) {
    const std::array<double, 3> d = {3, 1, 2};
    const auto es = eigh(HermMat::diagonal(d));
    EXPECT_DOUBLE_EQ(es.values[0], 1);
    EXPECT_DOUBLE_EQ(es.values[1], 2);
    EXPECT_DOUBLE_EQ(es.values[2], 3);
    // columns are unit vectors on the matching axis
    EXPECT_NEAR(std::abs(es.vectors(1, 0)), 1, 1e-15);
    EXPECT_NEAR(std::abs(es.vectors(2, 1)), 1, 1e-15);
    EXPECT_NEAR(std::abs(es.vectors(0, 2)), 1, 1e-15);
}

TEST(Eigh, PureStateAndMixed) {
    const auto es = eigh(phi_plus());
    EXPECT_NEAR(es.values[0], 0, 1e-15);
    EXPECT_NEAR(es.values[2], 0, 1e-15);
    EXPECT_NEAR(es.values[3], 1, 1e-15);
    for (double v : eigh(HermMat::identity(4) * 0.25).values) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Eigh, ReconstructsRandomHermitian) {
    std::mt19937_64 rng(11);
    for (std::size_t n : {2u, 3u, 4u, 8u}) {
        for (int it = 0; it < 50; ++it) {
            const auto m = random_hermitian(rng, n);
            const auto es = eigh(m);
            CMatrix d(n, n);
            for (std::size_t k = 0; k < n; ++k) d(k, k) = es.values[k];
            const CMatrix back = es.vectors * d * es.vectors.adjoint();
            EXPECT_LT(max_abs_diff(back, m.matrix()), 1e-10 * m.frobenius_norm());
            const CMatrix gram = es.vectors.adjoint() * es.vectors;
            EXPECT_LT(max_abs_diff(gram, CMatrix::identity(n)), 1e-12);
            for (std::size_t k = 1; k < n; ++k) EXPECT_LE(es.values[k - 1], es.values[k]);
        }
    }
}

TEST(Cholesky, PositiveDefiniteOnly) {
    std::mt19937_64 rng(5);
    const auto a = random_hermitian(rng, 4);
    const HermMat pd(a.matrix() * a.matrix() + CMatrix::identity(4));
    const auto l = cholesky(pd);
    ASSERT_TRUE(l.has_value());
    EXPECT_LT(max_abs_diff(*l * l->adjoint(), pd.matrix()), 1e-12);
    const std::array<double, 2> d = {1, -1};
    EXPECT_FALSE(cholesky(HermMat::diagonal(d)).has_value());
}

TEST(PartialTrace, BellMarginalIsMixed) {
    const std::array<std::size_t, 2> dims = {2, 2};
    const std::array<std::size_t, 1> keep_a = {0}, keep_b = {1};
    const CMatrix half = CMatrix::identity(2) * Complex(0.5);
    EXPECT_LT(max_abs_diff(partial_trace(phi_plus(), dims, keep_a).matrix(), half), 1e-15);
    EXPECT_LT(max_abs_diff(partial_trace(phi_plus(), dims, keep_b).matrix(), half), 1e-15);
}

TEST(PartialTrace, ProductState) {
    std::mt19937_64 rng(7);
    const auto a = random_hermitian(rng, 2);
    const auto b = random_hermitian(rng, 4);
    const std::array<std::size_t, 2> dims = {2, 4};
    const std::array<std::size_t, 1> keep = {0};
    const CMatrix expected = a.matrix() * Complex(b.trace());
    EXPECT_LT(max_abs_diff(partial_trace(kron(a, b), dims, keep).matrix(), expected), 1e-12);
}

TEST(PartialTrace, ThreeFactorsKeepTwo) {
    std::mt19937_64 rng(8);
    const auto a = random_hermitian(rng, 2), b = random_hermitian(rng, 2), c = random_hermitian(rng, 2);
    const std::array<std::size_t, 3> dims = {2, 2, 2};
    const std::array<std::size_t, 2> keep_ac = {0, 2};
    const CMatrix expected = kron(a, c).matrix() * Complex(b.trace());
    EXPECT_LT(max_abs_diff(partial_trace(kron(kron(a, b), c), dims, keep_ac).matrix(), expected), 1e-12);
}

TEST(PartialTrace, PreservesTrace) {
    std::mt19937_64 rng(9);
    const std::array<std::size_t, 3> dims = {2, 2, 2};
    const std::array<std::size_t, 1> keep = {1};
    for (int it = 0; it < 20; ++it) {
        const auto m = random_hermitian(rng, 8);
        EXPECT_NEAR(partial_trace(m, dims, keep).trace(), m.trace(), 1e-12);
    }
}

TEST(PartialTrace, RejectsBadDims) {
    const std::array<std::size_t, 2> dims = {2, 3};
    const std::array<std::size_t, 1> keep = {0};
    EXPECT_THROW(partial_trace(HermMat::identity(4), dims, keep), DimensionError);
}

TEST(PartialTranspose, IdentityAndBellState) {
    EXPECT_EQ(max_abs_diff(partial_transpose(HermMat::identity(4), Subsystem::A).matrix(), CMatrix::identity(4)), 0);
    EXPECT_NEAR(min_eigenvalue(partial_transpose(phi_plus(), Subsystem::B)), -0.5, 1e-14);
    EXPECT_NEAR(min_eigenvalue(partial_transpose(phi_plus(), Subsystem::A)), -0.5, 1e-14);
}

TEST(PartialTranspose, InvolutionTraceHermiticity) {
    std::mt19937_64 rng(10);
    for (int it = 0; it < 20; ++it) {
        const auto m = random_hermitian(rng, 4);
        for (auto s : {Subsystem::A, Subsystem::B}) {
            const auto t = partial_transpose(m, s);
            EXPECT_NEAR(t.trace(), m.trace(), 1e-12);
            EXPECT_LT(max_abs_diff(t.matrix(), t.matrix().adjoint()), 1e-15);
            EXPECT_LT(max_abs_diff(partial_transpose(t, s).matrix(), m.matrix()), 1e-15);
        }
        // transposing A equals the full transpose of transposing B
        const auto ta = partial_transpose(m, Subsystem::A).matrix();
        const auto tb = partial_transpose(m, Subsystem::B).matrix();
        CMatrix tbt(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) tbt(i, j) = tb(j, i);
        EXPECT_LT(max_abs_diff(ta, tbt), 1e-15);
    }
}

TEST(Pauli, Algebra) {
    const CMatrix xy = pauli(1).matrix() * pauli(2).matrix();
    EXPECT_LT(max_abs_diff(xy, pauli(3).matrix() * Complex(0, 1)), 1e-15);
    for (int i = 0; i < 4; ++i) {
        EXPECT_LT(max_abs_diff(pauli(i).matrix() * pauli(i).matrix(), CMatrix::identity(2)), 1e-15);
    }
}

TEST(HsInner, MatchesTraceOfProduct) {
    std::mt19937_64 rng(12);
    const auto a = random_hermitian(rng, 4), b = random_hermitian(rng, 4);
    EXPECT_NEAR(hs_inner(a, b), (a.matrix() * b.matrix()).trace().real(), 1e-12);
}
