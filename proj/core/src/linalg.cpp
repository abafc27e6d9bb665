#include "normetry/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "normetry/errors.hpp"

namespace normetry {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 60;  // 60 n(n-1)/2 rotations, inside the 100 n^2 budget

// Unitary J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] that diagonalizes the
// Hermitian 2x2 block [[a, b], [conj(b), d]]; t = s / c.
struct Rotation {
  double c;
  double s;
  double t;
  cplx phase;  // e^{-i phi}
};

Rotation jacobi_rotation(double a, cplx b, double d) {
  const double beta = std::abs(b);
  const double tau = (d - a) / (2.0 * beta);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, t, std::conj(b) / beta};
}

// Columns p, q of m are replaced by m * J.
void rotate_columns(Matrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const std::size_t n = m.dim();
  const cplx jqp = -r.s * r.phase;
  const cplx jqq = r.c * r.phase;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx mkp = m(k, p);
    const cplx mkq = m(k, q);
    m(k, p) = r.c * mkp + jqp * mkq;
    m(k, q) = r.s * mkp + jqq * mkq;
  }
}

// Rows p, q of m are replaced by J* * m.
void rotate_rows(Matrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const std::size_t n = m.dim();
  const cplx cjqp = std::conj(-r.s * r.phase);
  const cplx cjqq = std::conj(r.c * r.phase);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx mpk = m(p, k);
    const cplx mqk = m(q, k);
    m(p, k) = r.c * mpk + cjqp * mqk;
    m(q, k) = r.s * mpk + cjqq * mqk;
  }
}

double off_diagonal_norm(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] > v[j]; });
  return idx;
}

Matrix permute_columns(const Matrix& m, const std::vector<std::size_t>& order) {
  Matrix out(m.dim());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t i = 0; i < m.dim(); ++i) out(i, j) = m(i, order[j]);
  return out;
}

// Fill the columns flagged in `missing` with an orthonormal basis of the
// complement of the remaining columns, scanning e_1, e_2, ... in order.
void complete_unitary(Matrix& u, const std::vector<bool>& missing) {
  const std::size_t n = u.dim();
  std::vector<std::size_t> have;
  for (std::size_t j = 0; j < n; ++j)
    if (!missing[j]) have.push_back(j);
  std::size_t candidate = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!missing[j]) continue;
    bool found = false;
    while (!found && candidate < n) {
      std::vector<cplx> v(n, cplx{});
      v[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t h : have) {
          cplx dot = 0.0;
          for (std::size_t k = 0; k < n; ++k) dot += std::conj(u(k, h)) * v[k];
          for (std::size_t k = 0; k < n; ++k) v[k] -= dot * u(k, h);
        }
      }
      double nv = 0.0;
      for (const auto& z : v) nv += std::norm(z);
      nv = std::sqrt(nv);
      if (nv > 0.5) {
        for (std::size_t k = 0; k < n; ++k) u(k, j) = v[k] / nv;
        have.push_back(j);
        found = true;
      }
    }
    if (!found) throw ConvergenceFailure("unitary completion failed");
  }
}

}  // namespace

Spectrum eigh(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  Matrix a = h.matrix();
  Matrix v = Matrix::identity(n);
  const double total = a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * total) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        if (std::abs(b) == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Rotation r = jacobi_rotation(app, b, aqq);
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        rotate_columns(v, p, q, r);
        const double beta = std::abs(b);
        a(p, p) = app - r.t * beta;
        a(q, q) = aqq + r.t * beta;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (!converged) throw ConvergenceFailure("Jacobi sweep budget exhausted, n=" + std::to_string(n));

  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i).real();
  const auto order = descending_order(lambda);
  Spectrum out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = lambda[order[i]];
  out.frame = permute_columns(v, order);

  const double scale = n == 0 ? 1.0
      : std::max({1.0, std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back())});
  const double residual = (h.matrix() - from_frame(out.frame, out.eigenvalues).matrix()).frobenius_norm();
  if (residual > 1e-10 * scale) {
    throw ConvergenceFailure("eigen reconstruction residual " + std::to_string(residual));
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& h) { return eigh(h).eigenvalues; }

Svd svd(const Matrix& x) {
  const std::size_t n = x.dim();
  Matrix w = x;
  Matrix v = Matrix::identity(n);
  const double tol = std::max<double>(1, n) * kEps;

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) continue;
        converged = false;
        const Rotation r = jacobi_rotation(alpha, gamma, beta);
        rotate_columns(w, p, q, r);
        rotate_columns(v, p, q, r);
      }
    }
  }
  if (!converged) throw ConvergenceFailure("one-sided Jacobi budget exhausted, n=" + std::to_string(n));

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(w(k, j));
    sigma[j] = std::sqrt(s);
  }
  const auto order = descending_order(sigma);
  Svd out;
  out.values.resize(n);
  out.right = permute_columns(v, order);
  out.left = Matrix(n);
  std::vector<bool> missing(n, false);
  const double sigma_max = n == 0 ? 0.0 : sigma[order.front()];
  for (std::size_t j = 0; j < n; ++j) {
    const double s = sigma[order[j]];
    out.values[j] = s;
    if (s == 0.0 || s <= sigma_max * 1e-300) {
      missing[j] = true;
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) out.left(k, j) = w(k, order[j]) / s;
  }
  complete_unitary(out.left, missing);
  return out;
}

HermitianMatrix from_frame(const Matrix& frame, std::span<const double> values) {
  const std::size_t n = frame.dim();
  if (values.size() != n) throw DimensionMismatch("frame/value count");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += frame(i, k) * values[k] * std::conj(frame(j, k));
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  }
  return HermitianMatrix(out);
}

HermitianMatrix spectral_apply(const std::function<double(double)>& f, const HermitianMatrix& a,
                               FnDomain domain) {
  const Spectrum sp = eigh(a);
  const std::size_t n = sp.eigenvalues.size();
  const double scale =
      n == 0 ? 1.0 : std::max({1.0, std::abs(sp.eigenvalues.front()), std::abs(sp.eigenvalues.back())});
  const double floor =
      n == 0 ? 0.0
             : kRoundoffFloor * static_cast<double>(n) *
                   std::max(std::abs(sp.eigenvalues.front()), std::abs(sp.eigenvalues.back()));
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lambda = sp.eigenvalues[i];
    if (domain == FnDomain::Nonnegative && lambda < 0.0 && lambda < -kNegativeClampTol * scale) {
      throw DomainError("eigenvalue " + std::to_string(lambda) + " below the clamp window");
    }
    if (domain == FnDomain::Nonnegative && lambda <= floor) lambda = 0.0;
    if (domain == FnDomain::Positive && !(lambda > 0.0)) {
      throw DomainError("eigenvalue " + std::to_string(lambda) + " outside (0, inf)");
    }
    values[i] = f(lambda);
    if (!std::isfinite(values[i])) throw DomainError("function value is not finite");
  }
  return from_frame(sp.frame, values);
}

HermitianMatrix matrix_abs(const Matrix& x) {
  const Svd s = svd(x);
  return from_frame(s.right, s.values);
}

PolarParts polar(const Matrix& x) {
  const Svd s = svd(x);
  return {s.left * s.right.adjoint(), from_frame(s.right, s.values), from_frame(s.left, s.values)};
}

double operator_norm(const HermitianMatrix& h) {
  if (h.dim() == 0) return 0.0;
  const auto ev = eigenvalues(h);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double operator_norm(const Matrix& x) {
  if (x.dim() == 0) return 0.0;
  if (x.exactly_hermitian()) return operator_norm(HermitianMatrix(x));
  return svd(x).values.front();
}

double lambda_min(const HermitianMatrix& h) { return eigenvalues(h).back(); }
double lambda_max(const HermitianMatrix& h) { return eigenvalues(h).front(); }

double loewner_margin(const HermitianMatrix& x, const HermitianMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("Loewner comparison");
  const auto ev = eigenvalues(y - x);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.back() / std::max(1.0, norm);
}

bool loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y, double tol) {
  return loewner_margin(x, y) >= -tol;
}

bool is_psd(const HermitianMatrix& h, double tol) {
  const auto ev = eigenvalues(h);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.back() >= -tol * std::max(1.0, norm);
}

bool is_pd(const HermitianMatrix& h, double tol) {
  const auto ev = eigenvalues(h);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.back() > tol * std::max(1.0, norm);
}

bool is_hermitian(const Matrix& x, double tol) {
  const double asym = (x - x.adjoint()).frobenius_norm();
  return asym <= tol * std::max(1.0, x.frobenius_norm());
}

bool is_normal(const Matrix& x, double tol) {
  const Matrix xs = x.adjoint();
  const double comm = operator_norm(HermitianMatrix(x * xs - xs * x));
  const double nx = operator_norm(x);
  return comm <= tol * std::max(1.0, nx * nx);
}

bool is_contraction(const Matrix& x, double tol) {
  return lambda_max(HermitianMatrix(x.adjoint() * x)) <= 1.0 + tol;
}

bool is_expansive(const Matrix& x, double tol) {
  return lambda_min(HermitianMatrix(x.adjoint() * x)) >= 1.0 - tol;
}

}  // namespace normetry
