#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace normetry {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Entries are always finite.
class Matrix {
public:
  Matrix() = default;
  /// Zero matrix of dimension n.
  explicit Matrix(std::size_t n);
  Matrix(std::size_t n, std::vector<cplx> entries);
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix diagonal(std::span<const cplx> d);

  std::size_t dim() const noexcept { return n_; }

  cplx operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  std::span<const cplx> data() const noexcept { return a_; }

  Matrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  /// Bitwise equality with the adjoint.
  bool exactly_hermitian() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cplx s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(cplx s, Matrix m);
Matrix operator*(Matrix m, cplx s);

/// m^k for k >= 0 by repeated squaring.
Matrix power(const Matrix& m, unsigned k);

/// Assemble a (g*n)x(g*n) matrix from a row-major g x g grid of n x n blocks.
Matrix block_matrix(std::span<const Matrix> blocks, std::size_t grid);
Matrix block_2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

/// Hermitian view of a matrix. Construction replaces M by (M + M*)/2,
/// so the stored matrix equals its adjoint bit for bit.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& m);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> d);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

private:
  Matrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

/// Z* A Z, symmetrized.
HermitianMatrix congruence(const Matrix& z, const HermitianMatrix& a);

}  // namespace normetry
