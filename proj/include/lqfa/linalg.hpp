// Dense complex linear algebra for small matrices: products, adjoints,
// Kronecker products, Fourier and cyclic-permutation matrices, projectors.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lqfa {

using Complex = std::complex<double>;

inline constexpr double kStructuralTol = 1e-10;

// Row-major dense complex matrix. States are row vectors and evolve by
// right-multiplication, so code reads like xi * U.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix &rhs) const;
    ComplexMatrix operator+(const ComplexMatrix &rhs) const;
    ComplexMatrix operator-(const ComplexMatrix &rhs) const;

    // Largest entrywise modulus of (*this - rhs).
    double max_abs_diff(const ComplexMatrix &rhs) const;
    double max_abs() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// Dense complex row vector.
using CVec = std::vector<Complex>;

double norm(const CVec &v);
Complex inner(const CVec &a, const CVec &b);
CVec apply(const CVec &v, const ComplexMatrix &m);
CVec tensor(const CVec &a, const CVec &b);
CVec basis_vector(std::size_t dim, std::size_t index);

// Kronecker product; block (i,j) of the result is a(i,j) * b.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

// Quantum Fourier transform matrix F_n = (1/sqrt(n)) [omega^(rc)],
// omega = exp(2 pi i / n). Throws std::invalid_argument for n = 0.
ComplexMatrix fourier(std::size_t n);

// Cyclic permutation: e_i -> e_{i+1}, e_m -> e_1.
ComplexMatrix cyclic_permutation(std::size_t m);

// Hermitian idempotent matrix, here always diagonal 0/1.
class Projector {
  public:
    explicit Projector(ComplexMatrix m);
    const ComplexMatrix &matrix() const { return matrix_; }

    static bool is_projector(const ComplexMatrix &m, double tol = kStructuralTol);

  private:
    ComplexMatrix matrix_;
};

// Diagonal projector onto the span of the given basis states (0-based).
Projector projector_onto(std::size_t dim, const std::vector<std::size_t> &basis_indices);

// True iff both M M+ and M+ M are within tol of the identity (entrywise).
bool is_unitary(const ComplexMatrix &m, double tol = kStructuralTol);

} // namespace lqfa
