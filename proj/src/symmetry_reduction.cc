#include "symext/symmetry_reduction.h"

#include <cmath>
#include <numbers>

#include "symext/errors.h"

namespace symext {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// ABB′ index for each FGH label 000..111.
constexpr std::array<std::size_t, 8> kFghToAbb = {0b000, 0b110, 0b101, 0b011, 0b111, 0b001, 0b010, 0b100};

// Columns: |00⟩, |Ψ+⟩, |11⟩, |Ψ−⟩ in the GH computational basis.
const CMatrix& triplet_singlet_basis() {
    static const CMatrix t = [] {
        const double h = 1 / kSqrt2;
        return CMatrix::from_rows({
            {1, 0, 0, 0},
            {0, h, 0, h},
            {0, h, 0, -h},
            {0, 0, 1, 0},
        });
    }();
    return t;
}

CMatrix pauli_string(int a, int b, int c) {
    return kron(kron(pauli(a).matrix(), pauli(b).matrix()), pauli(c).matrix());
}

}  // namespace

const CMatrix& fgh_basis() {
    static const CMatrix u = [] {
        CMatrix m(8, 8);
        for (std::size_t k = 0; k < 8; ++k) m(kFghToAbb[k], k) = 1;
        return m;
    }();
    return u;
}

HermMat to_fgh(const HermMat& m_abb) { return conjugate(fgh_basis().adjoint(), m_abb); }

HermMat from_fgh(const HermMat& m_fgh) { return conjugate(fgh_basis(), m_fgh); }

CMatrix encoded_pauli(LogicalQubit q, PauliAxis axis) {
    const int p = axis == PauliAxis::X ? 1 : 3;
    switch (q) {
        case LogicalQubit::F: return pauli_string(p, p, p);
        case LogicalQubit::G: return axis == PauliAxis::X ? pauli_string(p, 0, p) : pauli_string(p, p, 0);
        case LogicalQubit::H: return axis == PauliAxis::X ? pauli_string(p, p, 0) : pauli_string(p, 0, p);
    }
    throw DomainError("encoded_pauli: bad logical qubit");
}

const CMatrix& swap_bb() {
    static const CMatrix v = [] {
        CMatrix m(8, 8);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t bp = 0; bp < 2; ++bp) m(a * 4 + bp * 2 + b, a * 4 + b * 2 + bp) = 1;
        return m;
    }();
    return v;
}

HermMat symmetrize_bb(const HermMat& m) {
    if (m.dim() != 8) throw DimensionError("symmetrize_bb: expected an 8x8 ABB' operator");
    return 0.5 * (m + conjugate(swap_bb(), m));
}

HermMat TripletBlock::gh_operator() const {
    if (r.dim() != 3) throw DimensionError("TripletBlock: triplet part must be 3x3");
    CMatrix block(4, 4);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) block(i, j) = r(i, j);
    block(3, 3) = singlet_weight;
    return conjugate(triplet_singlet_basis(), HermMat(std::move(block)));
}

HermMat TripletBlock::abb_operator() const { return from_fgh(kron(HermMat::identity(2), gh_operator())); }

TripletBlock r_matrix(BellIndex j) {
    const double s = (j == BellIndex::Z || j == BellIndex::Y) ? -kSqrt2 : kSqrt2;
    if (j == BellIndex::I || j == BellIndex::Z) {
        return {HermMat::from_rows({{2, s, 0}, {s, 1, 0}, {0, 0, 0}}), 1.0};
    }
    return {HermMat::from_rows({{0, 0, 0}, {0, 1, s}, {0, s, 2}}), 1.0};
}

TripletBlock reduce_bell_operator(const std::array<double, 4>& k) {
    TripletBlock out{HermMat::zero(3), 0.0};
    for (BellIndex j : kBellIndices) {
        const double kj = k[static_cast<std::size_t>(j)];
        out.r += kj * r_matrix(j).r;
        out.singlet_weight += kj;
    }
    return out;
}

HermMat symmetrized_bell_operator(const std::array<double, 4>& k) {
    HermMat sum = HermMat::zero(4);
    for (BellIndex j : kBellIndices) {
        sum += k[static_cast<std::size_t>(j)] * HermMat::projector(bell_vector(j));
    }
    return symmetrize_bb(kron(sum, HermMat::identity(2)));
}

const std::array<HermMat, 4>& f_matrices() {
    static const std::array<HermMat, 4> f = {
        HermMat::identity(3),
        HermMat::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}),
        HermMat::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
        HermMat::from_rows({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}),
    };
    return f;
}

double reduction_prefactor() {
    static const double c = [] {
        auto direct = [](BellIndex j) {
            std::array<double, 4> k{};
            k[static_cast<std::size_t>(j)] = 1;
            return symmetrized_bell_operator(k);
        };
        const HermMat reference = r_matrix(BellIndex::I).abb_operator();
        const double measured = hs_inner(direct(BellIndex::I), reference) / hs_inner(reference, reference);
        for (BellIndex j : kBellIndices) {
            const HermMat expected = measured * r_matrix(j).abb_operator();
            if (max_abs_diff(direct(j).matrix(), expected.matrix()) > 1e-12) {
                throw InternalError("reduction_prefactor: Bell states disagree on the block prefactor");
            }
        }
        return measured;
    }();
    return c;
}

}  // namespace symext
