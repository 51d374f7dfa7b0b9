#include "lqfa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lqfa {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix product: inner dimensions differ");
    ComplexMatrix m(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(r, k);
            if (a == 0.0)
                continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                m(r, c) += a * rhs(k, c);
        }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix sum: shapes differ");
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i] + rhs.data_[i];
    return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference: shapes differ");
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i] - rhs.data_[i];
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("max_abs_diff: shapes differ");
    double d = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        d = std::max(d, std::abs(data_[i] - rhs.data_[i]));
    return d;
}

double ComplexMatrix::max_abs() const {
    double d = 0.0;
    for (const Complex &z : data_)
        d = std::max(d, std::abs(z));
    return d;
}

double norm(const CVec &v) {
    double s = 0.0;
    for (const Complex &z : v)
        s += std::norm(z);
    return std::sqrt(s);
}

Complex inner(const CVec &a, const CVec &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner: dimensions differ");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * std::conj(b[i]);
    return s;
}

CVec apply(const CVec &v, const ComplexMatrix &m) {
    if (v.size() != m.rows())
        throw std::invalid_argument("apply: vector/matrix dimensions differ");
    CVec out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const Complex a = v[r];
        if (a == 0.0)
            continue;
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[c] += a * m(r, c);
    }
    return out;
}

CVec tensor(const CVec &a, const CVec &b) {
    CVec out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i * b.size() + j] = a[i] * b[j];
    return out;
}

CVec basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim)
        throw std::invalid_argument("basis_vector: index out of range");
    CVec v(dim);
    v[index] = 1.0;
    return v;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex f = a(ar, ac);
            if (f == 0.0)
                continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    m(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
        }
    return m;
}

ComplexMatrix fourier(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("fourier: dimension must be at least 1");
    ComplexMatrix m(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            // Reduce the exponent mod n before taking cos/sin; keeps the
            // phase accurate for large r*c.
            const std::size_t e = (r * c) % n;
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(e) /
                                 static_cast<double>(n);
            m(r, c) = scale * Complex(std::cos(theta), std::sin(theta));
        }
    return m;
}

ComplexMatrix cyclic_permutation(std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("cyclic_permutation: dimension must be at least 1");
    ComplexMatrix s(m, m);
    for (std::size_t i = 0; i + 1 < m; ++i)
        s(i, i + 1) = 1.0;
    s(m - 1, 0) = 1.0;
    return s;
}

Projector::Projector(ComplexMatrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("projector: matrix must be square");
    if (!is_projector(matrix_))
        throw std::invalid_argument("projector: matrix is not Hermitian idempotent");
}

bool Projector::is_projector(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols())
        return false;
    return m.max_abs_diff(m.adjoint()) <= tol && (m * m).max_abs_diff(m) <= tol;
}

Projector projector_onto(std::size_t dim, const std::vector<std::size_t> &basis_indices) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i : basis_indices) {
        if (i >= dim)
            throw std::invalid_argument("projector_onto: basis index out of range");
        m(i, i) = 1.0;
    }
    return Projector(std::move(m));
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("is_unitary: matrix must be square");
    const ComplexMatrix id = ComplexMatrix::identity(m.rows());
    const ComplexMatrix adj = m.adjoint();
    return (m * adj).max_abs_diff(id) <= tol && (adj * m).max_abs_diff(id) <= tol;
}

} // namespace lqfa
