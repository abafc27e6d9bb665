#pragma once

#include <limits>

#include <functional>
#include <vector>

#include "normetry/matrix.hpp"

namespace normetry {

/// Eigen-decomposition of a Hermitian matrix: eigenvalues in descending
/// order, eigenvectors as the columns of a unitary frame in the same order.
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix frame;
};

/// Cyclic complex Jacobi. Throws ConvergenceFailure if the off-diagonal mass
/// does not vanish within 100 n^2 rotations or the reconstruction residual
/// exceeds 1e-10 max(1, |A|).
Spectrum eigh(const HermitianMatrix& h);

/// Descending eigenvalues only.
std::vector<double> eigenvalues(const HermitianMatrix& h);

/// X = left * diag(values) * right^*, values descending and non-negative.
/// left is completed to a unitary on the kernel of X* deterministically.
struct Svd {
  Matrix left;
  std::vector<double> values;
  Matrix right;
};

/// One-sided (Hestenes) Jacobi.
Svd svd(const Matrix& x);

enum class FnDomain {
  Real,         ///< f is defined on all of R
  Nonnegative,  ///< f on [0, inf); roundoff-negative eigenvalues clamp to 0
  Positive,     ///< f on (0, inf); singular at 0
};

/// Relative size under which a negative eigenvalue is treated as roundoff.
inline constexpr double kNegativeClampTol = 1e-8;
/// On the nonnegative domain, eigenvalues within 64 n eps ||A|| of zero are
/// roundoff of an exact zero and are evaluated as 0. Without this, f with
/// infinite slope at 0 (t^s, s < 1) turns 1e-16 noise into 1e-4 values.
inline constexpr double kRoundoffFloor = 64 * std::numeric_limits<double>::epsilon();

/// V f(Lambda) V*.
HermitianMatrix spectral_apply(const std::function<double(double)>& f,
                               const HermitianMatrix& a,
                               FnDomain domain = FnDomain::Real);

/// Rebuild V diag(values) V* from a frame.
HermitianMatrix from_frame(const Matrix& frame, std::span<const double> values);

/// |X| = (X* X)^{1/2}.
HermitianMatrix matrix_abs(const Matrix& x);

struct PolarParts {
  Matrix u;                 ///< unitary, X = u * abs
  HermitianMatrix abs;      ///< |X|
  HermitianMatrix abs_star; ///< |X*|
};

PolarParts polar(const Matrix& x);

double operator_norm(const Matrix& x);
double operator_norm(const HermitianMatrix& h);
double lambda_min(const HermitianMatrix& h);
double lambda_max(const HermitianMatrix& h);

/// lambda_min(y - x) / max(1, |y - x|_op).
double loewner_margin(const HermitianMatrix& x, const HermitianMatrix& y);
/// x <= y in the Loewner order, up to tol max(1, |y - x|_op).
bool loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y, double tol);

bool is_psd(const HermitianMatrix& h, double tol);
/// lambda_min(h) > tol max(1, |h|_op).
bool is_pd(const HermitianMatrix& h, double tol = 1e-12);
bool is_hermitian(const Matrix& x, double tol);
bool is_normal(const Matrix& x, double tol);
bool is_contraction(const Matrix& x, double tol);
bool is_expansive(const Matrix& x, double tol);

}  // namespace normetry
