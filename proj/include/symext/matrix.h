#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace symext {

using Complex = std::complex<double>;

// Dense row-major complex matrix. General purpose; no structural invariant.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);

    static CMatrix identity(std::size_t n);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const Complex> data() const { return data_; }

    CMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    std::vector<Complex> apply(std::span<const Complex> v) const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Hermitian matrix with value semantics.
///
/// Every constructor stores (m + m†)/2, so the stored entries are exactly
/// Hermitian. Inputs whose anti-Hermitian part exceeds 1e-9 of their largest
/// entry are rejected with DomainError. Real symmetric matrices are the
/// special case with zero imaginary parts.
class HermMat {
  public:
    HermMat() = default;
    explicit HermMat(CMatrix m);

    static HermMat identity(std::size_t n);
    static HermMat zero(std::size_t n);
    static HermMat diagonal(std::span<const double> d);
    static HermMat from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    /// |v><v| (v is not normalized).
    static HermMat projector(std::span<const Complex> v);

    std::size_t dim() const { return m_.rows(); }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const CMatrix& matrix() const { return m_; }

    double trace() const { return m_.trace().real(); }
    double frobenius_norm() const { return m_.frobenius_norm(); }

    HermMat& operator+=(const HermMat& other);
    HermMat& operator-=(const HermMat& other);
    HermMat& operator*=(double s);

    friend HermMat operator+(HermMat a, const HermMat& b) { return a += b; }
    friend HermMat operator-(HermMat a, const HermMat& b) { return a -= b; }
    friend HermMat operator*(HermMat a, double s) { return a *= s; }
    friend HermMat operator*(double s, HermMat a) { return a *= s; }

  private:
    CMatrix m_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
HermMat kron(const HermMat& a, const HermMat& b);

/// u·m·u†.
HermMat conjugate(const CMatrix& u, const HermMat& m);

/// Re Tr[a·b], the Hilbert-Schmidt inner product of Hermitian matrices.
double hs_inner(const HermMat& a, const HermMat& b);

/// Largest |a(i,j) - b(i,j)|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

struct Eigensystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k belongs to values[k]
};

/// Cyclic complex Jacobi. Throws SolverFailure after 100 sweeps.
Eigensystem eigh(const HermMat& m);
double min_eigenvalue(const HermMat& m);

/// Lower-triangular L with m = L·L†, or nullopt when m is not positive definite.
std::optional<CMatrix> cholesky(const HermMat& m);

/// Marginal on the factors listed in `keep` (ascending factor indices).
HermMat partial_trace(const HermMat& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

enum class Subsystem { A, B };

/// Partial transpose of a two-qubit operator.
HermMat partial_transpose(const HermMat& m, Subsystem which);

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
const HermMat& pauli(int i);

}  // namespace symext
