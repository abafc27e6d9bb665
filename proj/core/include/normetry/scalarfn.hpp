#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "normetry/linalg.hpp"
#include "normetry/matrix.hpp"

namespace normetry {

/// Hypothesis classes a scalar function can belong to.
enum class FnClass : std::uint8_t {
  ConcaveNonneg = 1,           ///< concave, f >= 0 on [0, inf)
  ConvexVanishing = 2,         ///< convex, f >= 0, f(0) = 0
  DecreasingTgIncreasing = 4,  ///< g decreasing and t g(t) increasing
  OperatorConcaveCatalog = 8,  ///< whitelisted operator concave functions
};

std::string to_string(FnClass c);

class ScalarFn;

namespace fn {
struct Sqrt {};
/// t^s, 0 < s <= 1.
struct Power { double s; };
/// log(1 + t).
struct Log1p {};
/// slope * t + offset.
struct AffinePlus { double slope; double offset; };
/// t / (t + c).
struct Saturating { double c; };
/// (|t - a| + t - a) / 2, the hinge at a.
struct Angle { double a; };
/// (sqrt((t - a)^2 + r) + t - sqrt(a^2 + r)) / 2.
struct Smoothed { double a; double r; };
/// Closed-form inverse of Smoothed{a, r}.
struct SmoothedInverse { double a; double r; };
/// t^m, m a positive integer.
struct PowerM { unsigned m; };
/// Piecewise linear interpolant through ascending (t, value) pairs starting
/// at t = 0, extended past the last breakpoint with the last slope.
struct PwlConcave { std::vector<std::pair<double, double>> breakpoints; };
/// f(t) / t; singular at 0.
struct OverT { std::shared_ptr<const ScalarFn> inner; };
/// sum_i w_i f_i(t).
struct ConeCombination {
  std::vector<double> weights;
  std::vector<ScalarFn> members;
};
}  // namespace fn

using FnDescriptor = std::variant<fn::Sqrt, fn::Power, fn::Log1p, fn::AffinePlus, fn::Saturating,
                                  fn::Angle, fn::Smoothed, fn::SmoothedInverse, fn::PowerM,
                                  fn::PwlConcave, fn::OverT, fn::ConeCombination>;

/// Sampling grid for shape validation: `points` equispaced nodes on
/// [0, t_max], or on [kSingularStart, t_max] for functions singular at 0.
struct Grid {
  double t_max = 100.0;
  std::size_t points = 2048;
  std::vector<double> nodes(bool singular_at_zero = false) const;
};

inline constexpr double kSingularStart = 1e-8;
inline constexpr double kShapeSlack = 1e-9;

/// A scalar function on [0, inf) together with the hypothesis classes it
/// passed at construction (grid validation, or whitelist for operator
/// concavity). Immutable.
class ScalarFn {
public:
  /// Throws BadSpec on invalid parameters.
  explicit ScalarFn(FnDescriptor descriptor);

  static ScalarFn sqrt() { return ScalarFn(fn::Sqrt{}); }
  static ScalarFn power(double s) { return ScalarFn(fn::Power{s}); }
  static ScalarFn log1p() { return ScalarFn(fn::Log1p{}); }
  static ScalarFn affine(double slope, double offset) { return ScalarFn(fn::AffinePlus{slope, offset}); }
  static ScalarFn saturating(double c) { return ScalarFn(fn::Saturating{c}); }
  static ScalarFn angle(double a) { return ScalarFn(fn::Angle{a}); }
  static ScalarFn smoothed(double a, double r) { return ScalarFn(fn::Smoothed{a, r}); }
  static ScalarFn smoothed_inverse(double a, double r) { return ScalarFn(fn::SmoothedInverse{a, r}); }
  static ScalarFn power_m(unsigned m) { return ScalarFn(fn::PowerM{m}); }
  static ScalarFn pwl(std::vector<std::pair<double, double>> breakpoints) {
    return ScalarFn(fn::PwlConcave{std::move(breakpoints)});
  }
  static ScalarFn over_t(const ScalarFn& inner);

  /// Throws DomainError for t < 0, or t = 0 when singular there.
  double operator()(double t) const;

  const FnDescriptor& descriptor() const noexcept { return d_; }
  bool has(FnClass c) const noexcept { return (classes_ & static_cast<std::uint8_t>(c)) != 0; }
  std::uint8_t classes() const noexcept { return classes_; }
  bool singular_at_zero() const noexcept { return singular_; }
  FnDomain domain() const noexcept { return singular_ ? FnDomain::Positive : FnDomain::Nonnegative; }
  std::string name() const;

  /// Throws ShapeValidationFailed unless the function belongs to `c`.
  const ScalarFn& require(FnClass c) const;

private:
  double eval(double t) const;

  FnDescriptor d_;
  bool singular_ = false;
  std::uint8_t classes_ = 0;
};

/// Finite-difference check of concavity / convexity / monotonicity with
/// slack kShapeSlack (relative to max(1, |f|)). OperatorConcaveCatalog is
/// answered from the whitelist; the grid is ignored for it.
bool validate_shape(const ScalarFn& f, FnClass c, const Grid& grid = {});

/// sup over the grid of |Smoothed{a, r} - Angle{a}| for the smallest r.
double smoothed_converges(double a, std::span<const double> r_sequence, const Grid& grid = {});

/// Non-negative combination of members sharing a class. Throws MixedClass
/// if the members have no class in common, BadSpec on negative weights.
ScalarFn cone_combine(std::span<const double> weights, std::span<const ScalarFn> members);

/// f applied through the spectral calculus, with the domain policy that
/// matches f (negative clamp on [0, inf), strict positivity when singular).
HermitianMatrix spectral_apply(const ScalarFn& f, const HermitianMatrix& a);

/// Eigenvalues of f(a), descending. Same domain policy as spectral_apply.
std::vector<double> spectral_values(const ScalarFn& f, const HermitianMatrix& a);

}  // namespace normetry
