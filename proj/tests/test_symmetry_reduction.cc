#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "symext/bell_state.h"
#include "symext/symmetry_reduction.h"
#include "test_support.h"

using namespace symext;

namespace {

const double kSqrt2 = std::sqrt(2.0);

HermMat real3(std::array<std::array<double, 3>, 3> a) {
    CMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i][j];
    return HermMat(m);
}

bool commute(const CMatrix& a, const CMatrix& b) { return max_abs_diff(a * b, b * a) < 1e-15; }
bool anticommute(const CMatrix& a, const CMatrix& b) {
    return max_abs_diff(a * b + b * a, CMatrix(a.rows(), a.cols())) < 1e-15;
}

}  // namespace

TEST(Fgh, BasisIsPermutation) {
    const CMatrix& u = fgh_basis();
    EXPECT_LT(max_abs_diff(u.adjoint() * u, CMatrix::identity(8)), 1e-15);
    for (std::size_t c = 0; c < 8; ++c) {
        int ones = 0;
        for (std::size_t r = 0; r < 8; ++r) ones += u(r, c) == Complex(1);
        EXPECT_EQ(ones, 1);
    }
}

TEST(Fgh, RoundTrip) {
    std::mt19937_64 rng(1);
    const auto m = symext::testing::random_hermitian(rng, 8);
    EXPECT_LT(max_abs_diff(from_fgh(to_fgh(m)).matrix(), m.matrix()), 1e-14);
}

TEST(Fgh, EncodedPaulisBecomeLogical) {
    // in the FGH basis the encoded Z's are Z on one logical qubit
    const HermMat z_f(encoded_pauli(LogicalQubit::F, PauliAxis::Z));
    const HermMat z_g(encoded_pauli(LogicalQubit::G, PauliAxis::Z));
    const HermMat z_h(encoded_pauli(LogicalQubit::H, PauliAxis::Z));
    const auto i2 = HermMat::identity(2);
    EXPECT_LT(max_abs_diff(to_fgh(z_f).matrix(), kron(kron(pauli(3), i2), i2).matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(to_fgh(z_g).matrix(), kron(kron(i2, pauli(3)), i2).matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(to_fgh(z_h).matrix(), kron(kron(i2, i2), pauli(3)).matrix()), 1e-15);
}

TEST(Fgh, EncodedPauliAlgebra) {
    const LogicalQubit qs[] = {LogicalQubit::F, LogicalQubit::G, LogicalQubit::H};
    for (auto a : qs) {
        for (auto b : qs) {
            for (auto pa : {PauliAxis::X, PauliAxis::Z}) {
                for (auto pb : {PauliAxis::X, PauliAxis::Z}) {
                    const auto ma = encoded_pauli(a, pa), mb = encoded_pauli(b, pb);
                    if (a != b || pa == pb) {
                        EXPECT_TRUE(commute(ma, mb));
                    } else {
                        EXPECT_TRUE(anticommute(ma, mb));
                    }
                }
            }
        }
    }
}

TEST(Fgh, SwapBecomesGhSwap) {
    const auto i2 = HermMat::identity(2);
    CMatrix swap2(4, 4);
    swap2(0, 0) = swap2(1, 2) = swap2(2, 1) = swap2(3, 3) = 1;
    const CMatrix expected = kron(i2.matrix(), swap2);
    const CMatrix got = fgh_basis().adjoint() * swap_bb() * fgh_basis();
    EXPECT_LT(max_abs_diff(got, expected), 1e-15);
}

TEST(SymmetrizeBb, IdentityAndSymmetricInputs) {
    EXPECT_LT(max_abs_diff(symmetrize_bb(HermMat::identity(8)).matrix(), CMatrix::identity(8)), 1e-15);
    std::mt19937_64 rng(2);
    const auto a = symext::testing::random_hermitian(rng, 2), b = symext::testing::random_hermitian(rng, 2);
    const auto sym = kron(kron(a, b), b);
    EXPECT_LT(max_abs_diff(symmetrize_bb(sym).matrix(), sym.matrix()), 1e-14);
}

TEST(SymmetrizeBb, ProjectionCommutingWithSwap) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        const auto m = symext::testing::random_hermitian(rng, 8);
        const auto s = symmetrize_bb(m);
        EXPECT_LT(max_abs_diff(symmetrize_bb(s).matrix(), s.matrix()), 1e-14);
        const auto vm = conjugate(swap_bb(), m);
        EXPECT_LT(max_abs_diff(symmetrize_bb(vm).matrix(), conjugate(swap_bb(), s).matrix()), 1e-14);
    }
}

TEST(RMatrix, PrintedValues) {
    const auto ri = r_matrix(BellIndex::I);
    EXPECT_LT(max_abs_diff(ri.r.matrix(), real3({{{2, kSqrt2, 0}, {kSqrt2, 1, 0}, {0, 0, 0}}}).matrix()), 1e-15);
    EXPECT_DOUBLE_EQ(ri.singlet_weight, 1);
    const auto rx = r_matrix(BellIndex::X);
    EXPECT_LT(max_abs_diff(rx.r.matrix(), real3({{{0, 0, 0}, {0, 1, kSqrt2}, {0, kSqrt2, 2}}}).matrix()), 1e-15);
}

TEST(RMatrix, SumIsFourIdentity) {
    HermMat sum = HermMat::zero(3);
    for (auto j : kBellIndices) sum += r_matrix(j).r;
    EXPECT_LT(max_abs_diff(sum.matrix(), CMatrix::identity(3) * Complex(4)), 1e-15);
}

TEST(ReduceBellOperator, Examples) {
    const auto one = reduce_bell_operator({1, 0, 0, 0});
    EXPECT_LT(max_abs_diff(one.r.matrix(), r_matrix(BellIndex::I).r.matrix()), 1e-15);
    EXPECT_DOUBLE_EQ(one.singlet_weight, 1);
    const auto flat = reduce_bell_operator({0.25, 0.25, 0.25, 0.25});
    EXPECT_LT(max_abs_diff(flat.r.matrix(), CMatrix::identity(3)), 1e-15);
    EXPECT_DOUBLE_EQ(flat.singlet_weight, 1);
}

TEST(FMatrices, IdentitiesWithR) {
    const auto& f = f_matrices();
    EXPECT_LT(max_abs_diff(f[0].matrix(), CMatrix::identity(3)), 0.5e-15);
    EXPECT_LT(max_abs_diff(f[1].matrix(), real3({{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}}).matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(f[2].matrix(), real3({{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}}).matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(f[3].matrix(), real3({{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}}).matrix()), 1e-15);
    const auto rphi_p = f[0] + f[1] + kSqrt2 * f[2], rphi_m = f[0] + f[1] - kSqrt2 * f[2];
    const auto rpsi_p = f[0] - f[1] + kSqrt2 * f[3], rpsi_m = f[0] - f[1] - kSqrt2 * f[3];
    EXPECT_LT(max_abs_diff(rphi_p.matrix(), r_matrix(BellIndex::I).r.matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(rphi_m.matrix(), r_matrix(BellIndex::Z).r.matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(rpsi_p.matrix(), r_matrix(BellIndex::X).r.matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(rpsi_m.matrix(), r_matrix(BellIndex::Y).r.matrix()), 1e-15);
}

TEST(Reduction, PrefactorFromTraceBudget) {
    // Tr Sym(|β⟩⟨β| ⊗ 1) = 2 and Tr(1_F ⊗ (R ⊕ 1)) = 2(Tr R + 1) = 8
    const double oracle = symmetrized_bell_operator({1, 0, 0, 0}).trace() / (2 * (r_matrix(BellIndex::I).r.trace() + 1));
    EXPECT_NEAR(oracle, 0.25, 1e-15);
    EXPECT_NEAR(reduction_prefactor(), oracle, 1e-12);
}

TEST(Reduction, BlockFormForEachBellState) {
    const double c = reduction_prefactor();
    for (std::size_t j = 0; j < 4; ++j) {
        std::array<double, 4> k{};
        k[j] = 1;
        const auto direct = symmetrized_bell_operator(k);
        const auto block = r_matrix(kBellIndices[j]).abb_operator();
        EXPECT_LT(max_abs_diff(direct.matrix(), (c * block).matrix()), 1e-12) << "j=" << j;
    }
}

TEST(Reduction, SymmetrizedOperatorFromDefinition) {
    // Sym(|β⟩⟨β| ⊗ 1) built from scratch with kron and the swap
    const auto b = bell_vector(BellIndex::X);
    const auto raw = kron(HermMat::projector(b), HermMat::identity(2));
    const CMatrix& v = swap_bb();
    const HermMat sym((raw.matrix() + v * raw.matrix() * v.adjoint()) * Complex(0.5));
    EXPECT_LT(max_abs_diff(symmetrized_bell_operator({0, 1, 0, 0}).matrix(), sym.matrix()), 1e-15);
}

TEST(Reduction, PositivityEquivalence) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    int positive = 0;
    for (int it = 0; it < 10000; ++it) {
        std::array<double, 4> k{};
        // bias toward the PSD cone so both outcomes occur
        for (auto& x : k) x = g(rng) + 1.0;
        const auto t = reduce_bell_operator(k);
        const double reduced = std::min(min_eigenvalue(t.r), t.singlet_weight);
        const double full = min_eigenvalue(symmetrized_bell_operator(k));
        if (std::abs(reduced) < 1e-9) continue;
        ASSERT_EQ(reduced > 0, full > -1e-12) << it;
        positive += reduced > 0;
    }
    EXPECT_GT(positive, 100);
    EXPECT_LT(positive, 9900);
}
