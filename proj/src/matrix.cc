#include "symext/matrix.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "symext/errors.h"

namespace symext {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-13;
constexpr double kHermiticityTolerance = 1e-9;

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch");
    }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    CMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("CMatrix::from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex CMatrix::trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

std::vector<Complex> CMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols_) throw DimensionError("CMatrix::apply: vector length mismatch");
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "CMatrix::operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "CMatrix::operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("CMatrix::operator*: inner dimension mismatch");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

HermMat::HermMat(CMatrix m) {
    if (!m.is_square()) throw DimensionError("HermMat: matrix is not square");
    const std::size_t n = m.rows();
    double largest = 0;
    double asym = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            largest = std::max(largest, std::abs(m(i, j)));
            asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    if (asym > kHermiticityTolerance * std::max(1.0, largest)) {
        throw DomainError("HermMat: input is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    }
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    m_ = std::move(m);
}

HermMat HermMat::identity(std::size_t n) { return HermMat(CMatrix::identity(n)); }

HermMat HermMat::zero(std::size_t n) { return HermMat(CMatrix(n, n)); }

HermMat HermMat::diagonal(std::span<const double> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return HermMat(std::move(m));
}

HermMat HermMat::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    return HermMat(CMatrix::from_rows(rows));
}

HermMat HermMat::projector(std::span<const Complex> v) {
    CMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return HermMat(std::move(m));
}

HermMat& HermMat::operator+=(const HermMat& other) {
    m_ += other.m_;
    return *this;
}

HermMat& HermMat::operator-=(const HermMat& other) {
    m_ -= other.m_;
    return *this;
}

HermMat& HermMat::operator*=(double s) {
    m_ *= s;
    return *this;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

HermMat kron(const HermMat& a, const HermMat& b) { return HermMat(kron(a.matrix(), b.matrix())); }

HermMat conjugate(const CMatrix& u, const HermMat& m) { return HermMat(u * m.matrix() * u.adjoint()); }

double hs_inner(const HermMat& a, const HermMat& b) {
    if (a.dim() != b.dim()) throw DimensionError("hs_inner: dimension mismatch");
    double acc = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) acc += (a(i, j) * b(j, i)).real();
    return acc;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

Eigensystem eigh(const HermMat& m) {
    const std::size_t n = m.dim();
    CMatrix a = m.matrix();
    CMatrix v = CMatrix::identity(n);
    const double threshold = kOffDiagonalTolerance * a.frobenius_norm();

    auto off_diagonal_norm = [&] {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; off_diagonal_norm() > threshold; ++sweep) {
        if (sweep == kMaxJacobiSweeps) {
            throw SolverFailure("eigh: Jacobi iteration did not converge in 100 sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0) continue;
                const Complex phase_conj = std::conj(apq / mag);
                const double theta = (a(q, q).real() - a(p, p).real()) / (2 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                // Unitary J acting on columns p, q: diag phase on q followed by a real rotation.
                const Complex jpp = c, jpq = s, jqp = -s * phase_conj, jqq = c * phase_conj;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    Eigensystem out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double min_eigenvalue(const HermMat& m) { return m.dim() == 0 ? 0.0 : eigh(m).values.front(); }

std::optional<CMatrix> cholesky(const HermMat& m) {
    const std::size_t n = m.dim();
    CMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0)) return std::nullopt;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex acc = m(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
            l(i, j) = acc / ljj;
        }
    }
    return l;
}

HermMat partial_trace(const HermMat& m, std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (total != m.dim()) throw DimensionError("partial_trace: factor dimensions do not multiply to dim(m)");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw DimensionError("partial_trace: kept factor index out of range");
        kept[k] = true;
    }

    // Split a full index into (kept index, traced index), both mixed-radix in factor order.
    auto split = [&](std::size_t idx) {
        std::size_t kept_idx = 0, traced_idx = 0, kept_stride = 1, traced_stride = 1;
        for (std::size_t f = dims.size(); f-- > 0;) {
            const std::size_t digit = idx % dims[f];
            idx /= dims[f];
            if (kept[f]) {
                kept_idx += digit * kept_stride;
                kept_stride *= dims[f];
            } else {
                traced_idx += digit * traced_stride;
                traced_stride *= dims[f];
            }
        }
        return std::pair{kept_idx, traced_idx};
    };

    std::size_t kept_dim = 1;
    for (std::size_t f = 0; f < dims.size(); ++f)
        if (kept[f]) kept_dim *= dims[f];
    CMatrix out(kept_dim, kept_dim);
    for (std::size_t i = 0; i < total; ++i) {
        const auto [ki, ti] = split(i);
        for (std::size_t j = 0; j < total; ++j) {
            const auto [kj, tj] = split(j);
            if (ti == tj) out(ki, kj) += m(i, j);
        }
    }
    return HermMat(std::move(out));
}

HermMat partial_transpose(const HermMat& m, Subsystem which) {
    if (m.dim() != 4) throw DimensionError("partial_transpose: expected a 4x4 two-qubit operator");
    CMatrix out(4, 4);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t d = 0; d < 2; ++d) {
                    // m(ab, cd) -> position with the chosen factor's indices swapped.
                    const std::size_t row = which == Subsystem::A ? c * 2 + b : a * 2 + d;
                    const std::size_t col = which == Subsystem::A ? a * 2 + d : c * 2 + b;
                    out(row, col) = m(a * 2 + b, c * 2 + d);
                }
    return HermMat(std::move(out));
}

const HermMat& pauli(int i) {
    static const std::array<HermMat, 4> paulis = {
        HermMat::identity(2),
        HermMat::from_rows({{0, 1}, {1, 0}}),
        HermMat::from_rows({{0, Complex(0, -1)}, {Complex(0, 1), 0}}),
        HermMat::from_rows({{1, 0}, {0, -1}}),
    };
    if (i < 0 || i > 3) throw DomainError("pauli: index must be in 0..3");
    return paulis[static_cast<std::size_t>(i)];
}

}  // namespace symext
