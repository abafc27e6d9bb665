#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "normetry/matrix.hpp"
#include "normetry/verdict.hpp"

namespace normetry {

/// A symmetric (unitarily invariant) norm.
class NormSpec {
public:
  enum class Kind { KyFan, Schatten, Operator, Trace };

  static NormSpec ky_fan(std::size_t k);
  /// p >= 1; p = infinity gives the operator norm.
  static NormSpec schatten(double p);
  static NormSpec op();
  static NormSpec trace();
  /// Inverse of label().
  static NormSpec parse(const std::string& label);

  Kind kind() const noexcept { return kind_; }
  std::size_t k() const noexcept { return k_; }
  double p() const noexcept { return p_; }
  std::string label() const;

private:
  NormSpec(Kind kind, std::size_t k, double p) : kind_(kind), k_(k), p_(p) {}
  Kind kind_;
  std::size_t k_;
  double p_;
};

/// Descending, non-negative singular values. Values below 1e-12 sigma_max
/// (including roundoff negatives) are stored as 0.
class SingularValues {
public:
  SingularValues() = default;
  explicit SingularValues(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return v_; }
  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  /// Sum of the top k values; k beyond size counts zero padding.
  double partial_sum(std::size_t k) const;

private:
  std::vector<double> v_;
};

SingularValues singular_values(const Matrix& x);

double norm(const SingularValues& s, const NormSpec& spec);
double norm(const Matrix& x, const NormSpec& spec);

/// x weakly majorized by y: every leading partial sum of x is at most
/// the corresponding one of y plus tol max(1, sum y). Shorter lists are
/// zero-padded.
bool weakly_majorized(const SingularValues& x, const SingularValues& y, double tol);

inline const std::vector<double> kSchattenGrid{1.0, 1.5, 2.0, 3.0,
                                               std::numeric_limits<double>::infinity()};

/// Fan dominance: |lhs| <= |rhs| for every symmetric norm iff every Ky Fan
/// k-norm comparison holds. One primary record per k, plus Schatten
/// cross-checks over `schatten`.
Verdict dominance_verdict(const SingularValues& lhs, const SingularValues& rhs,
                          double tol = kDefaultTol,
                          std::span<const double> schatten = kSchattenGrid);
/// Matrices must share a dimension.
Verdict dominance_verdict(const Matrix& lhs, const Matrix& rhs, double tol = kDefaultTol,
                          std::span<const double> schatten = kSchattenGrid);

/// The norms a per-norm scalar inequality is evaluated on: KyFan(1..n)
/// followed by Schatten(p) for p in `schatten`.
std::vector<NormSpec> norm_grid(std::size_t n, std::span<const double> schatten = kSchattenGrid);

}  // namespace normetry
