#include "normetry/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "normetry/errors.hpp"

namespace normetry {

Matrix::Matrix(std::size_t n) : n_(n), a_(n * n, cplx{0.0, 0.0}) {}

Matrix::Matrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) {
    throw DimensionMismatch("expected " + std::to_string(n * n) + " entries, got " +
                            std::to_string(a_.size()));
  }
  if (!all_finite()) throw DomainError("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionMismatch("matrix literal is not square");
    a_.insert(a_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw DomainError("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

cplx Matrix::trace() const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool Matrix::exactly_hermitian() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if ((*this)(i, j) != std::conj((*this)(j, i))) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rhs.n_ != n_) throw DimensionMismatch("matrix sum");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rhs.n_ != n_) throw DimensionMismatch("matrix difference");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& z : a_) z *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator-(Matrix m) { return m *= -1.0; }
Matrix operator*(cplx s, Matrix m) { return m *= s; }
Matrix operator*(Matrix m, cplx s) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  const std::size_t n = lhs.dim();
  if (rhs.dim() != n) throw DimensionMismatch("matrix product");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx l = lhs(i, k);
      if (l == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
    }
  }
  return out;
}

Matrix power(const Matrix& m, unsigned k) {
  Matrix result = Matrix::identity(m.dim());
  Matrix base = m;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Matrix block_matrix(std::span<const Matrix> blocks, std::size_t grid) {
  if (grid == 0 || blocks.size() != grid * grid) throw DimensionMismatch("block grid");
  const std::size_t n = blocks.front().dim();
  for (const auto& b : blocks)
    if (b.dim() != n) throw DimensionMismatch("blocks must share one size");
  Matrix out(grid * n);
  for (std::size_t bi = 0; bi < grid; ++bi)
    for (std::size_t bj = 0; bj < grid; ++bj) {
      const Matrix& b = blocks[bi * grid + bj];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(bi * n + i, bj * n + j) = b(i, j);
    }
  return out;
}

Matrix block_2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  const Matrix blocks[] = {a, b, c, d};
  return block_matrix(blocks, 2);
}

HermitianMatrix::HermitianMatrix(const Matrix& m) : m_(m.dim()) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = (m(i, j) + std::conj(m(j, i))) * 0.5;
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(Matrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  return HermitianMatrix(Matrix::diagonal(d));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.matrix() - b.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(cplx{s, 0.0} * a.matrix());
}

HermitianMatrix congruence(const Matrix& z, const HermitianMatrix& a) {
  return HermitianMatrix(z.adjoint() * a.matrix() * z);
}

}  // namespace normetry
