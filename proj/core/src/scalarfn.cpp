#include "normetry/scalarfn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "normetry/errors.hpp"

namespace normetry {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void check_parameters(const FnDescriptor& d) {
  std::visit(overloaded{
      [](const fn::Sqrt&) {},
      [](const fn::Log1p&) {},
      [](const fn::Power& p) {
        if (!(p.s > 0.0 && p.s <= 1.0)) throw BadSpec("Power exponent must lie in (0, 1]");
      },
      [](const fn::AffinePlus& p) {
        if (!(p.slope >= 0.0 && p.offset >= 0.0)) throw BadSpec("AffinePlus needs slope, offset >= 0");
      },
      [](const fn::Saturating& p) {
        if (!(p.c > 0.0)) throw BadSpec("Saturating needs c > 0");
      },
      [](const fn::Angle& p) {
        if (!(p.a > 0.0)) throw BadSpec("Angle needs a > 0");
      },
      [](const fn::Smoothed& p) {
        if (!(p.a > 0.0 && p.r > 0.0)) throw BadSpec("Smoothed needs a, r > 0");
      },
      [](const fn::SmoothedInverse& p) {
        if (!(p.a > 0.0 && p.r > 0.0)) throw BadSpec("SmoothedInverse needs a, r > 0");
      },
      [](const fn::PowerM& p) {
        if (p.m < 1) throw BadSpec("PowerM needs m >= 1");
      },
      [](const fn::PwlConcave& p) {
        const auto& b = p.breakpoints;
        if (b.empty() || b.front().first != 0.0) throw BadSpec("PWL breakpoints must start at t = 0");
        for (std::size_t i = 0; i < b.size(); ++i) {
          if (!std::isfinite(b[i].first) || !std::isfinite(b[i].second))
            throw BadSpec("PWL breakpoints must be finite");
          if (i > 0 && !(b[i].first > b[i - 1].first))
            throw BadSpec("PWL breakpoints must be strictly ascending in t");
        }
      },
      [](const fn::OverT& p) {
        if (!p.inner) throw BadSpec("OverT needs an inner function");
      },
      [](const fn::ConeCombination& p) {
        if (p.members.empty() || p.weights.size() != p.members.size())
          throw BadSpec("cone combination needs one weight per member");
        for (double w : p.weights)
          if (!(w >= 0.0) || !std::isfinite(w)) throw BadSpec("cone weights must be >= 0");
      },
  }, d);
}

bool descriptor_singular(const FnDescriptor& d) {
  return std::visit(overloaded{
      [](const fn::OverT&) { return true; },
      [](const fn::ConeCombination& c) {
        return std::any_of(c.members.begin(), c.members.end(),
                           [](const ScalarFn& m) { return m.singular_at_zero(); });
      },
      [](const auto&) { return false; },
  }, d);
}

bool whitelisted(const FnDescriptor& d) {
  return std::visit(overloaded{
      [](const fn::Sqrt&) { return true; },
      [](const fn::Power&) { return true; },
      [](const fn::Log1p&) { return true; },
      [](const fn::SmoothedInverse&) { return true; },
      [](const fn::Saturating&) { return true; },
      [](const fn::ConeCombination& c) {
        return std::all_of(c.members.begin(), c.members.end(), [](const ScalarFn& m) {
          return m.has(FnClass::OperatorConcaveCatalog);
        });
      },
      [](const auto&) { return false; },
  }, d);
}

}  // namespace

std::string to_string(FnClass c) {
  switch (c) {
    case FnClass::ConcaveNonneg: return "concave-nonneg";
    case FnClass::ConvexVanishing: return "convex-vanishing";
    case FnClass::DecreasingTgIncreasing: return "decreasing-tg-increasing";
    case FnClass::OperatorConcaveCatalog: return "operator-concave";
  }
  return "?";
}

std::vector<double> Grid::nodes(bool singular_at_zero) const {
  const double lo = singular_at_zero ? kSingularStart : 0.0;
  std::vector<double> t(points);
  const double h = (t_max - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) t[i] = lo + h * static_cast<double>(i);
  t.back() = t_max;
  return t;
}

ScalarFn::ScalarFn(FnDescriptor descriptor) : d_(std::move(descriptor)) {
  check_parameters(d_);
  singular_ = descriptor_singular(d_);
  const Grid canonical;
  for (FnClass c : {FnClass::ConcaveNonneg, FnClass::ConvexVanishing, FnClass::DecreasingTgIncreasing,
                    FnClass::OperatorConcaveCatalog}) {
    if (validate_shape(*this, c, canonical)) classes_ |= static_cast<std::uint8_t>(c);
  }
}

ScalarFn ScalarFn::over_t(const ScalarFn& inner) {
  return ScalarFn(fn::OverT{std::make_shared<const ScalarFn>(inner)});
}

double ScalarFn::operator()(double t) const {
  if (!(t >= 0.0)) throw DomainError("argument " + num(t) + " outside [0, inf)");
  if (singular_ && t == 0.0) throw DomainError(name() + " is singular at 0");
  return eval(t);
}

double ScalarFn::eval(double t) const {
  return std::visit(overloaded{
      [&](const fn::Sqrt&) { return std::sqrt(t); },
      [&](const fn::Power& p) { return std::pow(t, p.s); },
      [&](const fn::Log1p&) { return std::log1p(t); },
      [&](const fn::AffinePlus& p) { return p.slope * t + p.offset; },
      [&](const fn::Saturating& p) { return t / (t + p.c); },
      [&](const fn::Angle& p) { return 0.5 * (std::abs(t - p.a) + t - p.a); },
      [&](const fn::Smoothed& p) {
        // Same value as 1/2 (sqrt((t-a)^2 + r) + t - sqrt(a^2 + r)), with the
        // two square roots differenced analytically: the literal form loses
        // every digit for t < a, where h_r is nearly flat.
        const double x = t - p.a;
        const double s1 = std::sqrt(x * x + p.r);
        const double s0 = std::sqrt(p.a * p.a + p.r);
        const double num = (p.a - std::abs(x)) + t * (2.0 * p.a - t) / (s0 + s1);
        return 0.5 * (p.r * num / ((s1 + std::abs(x)) * (s0 + p.a))) + std::max(x, 0.0);
      },
      [&](const fn::SmoothedInverse& p) {
        // t - (r/2)/(2t + K - a) + (K + a)/2 with K = sqrt(a^2 + r), rewritten
        // through (K - a)(K + a) = r as t + (K + a) t / (2t + K - a).
        const double k = std::sqrt(p.a * p.a + p.r);
        const double gap = p.r / (k + p.a);
        return t + (k + p.a) * t / (2.0 * t + gap);
      },
      [&](const fn::PowerM& p) {
        double v = 1.0;
        for (unsigned i = 0; i < p.m; ++i) v *= t;
        return v;
      },
      [&](const fn::PwlConcave& p) {
        const auto& b = p.breakpoints;
        if (b.size() == 1) return b.front().second;
        auto hi = std::upper_bound(b.begin(), b.end(), t,
                                   [](double x, const auto& bp) { return x < bp.first; });
        std::size_t j = static_cast<std::size_t>(hi - b.begin());
        j = std::clamp<std::size_t>(j, 1, b.size() - 1);
        const auto& [t0, v0] = b[j - 1];
        const auto& [t1, v1] = b[j];
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
      },
      [&](const fn::OverT& p) { return (*p.inner)(t) / t; },
      [&](const fn::ConeCombination& c) {
        double s = 0.0;
        for (std::size_t i = 0; i < c.members.size(); ++i) s += c.weights[i] * c.members[i](t);
        return s;
      },
  }, d_);
}

std::string ScalarFn::name() const {
  return std::visit(overloaded{
      [](const fn::Sqrt&) { return std::string("sqrt"); },
      [](const fn::Power& p) { return "power(" + num(p.s) + ")"; },
      [](const fn::Log1p&) { return std::string("log1p"); },
      [](const fn::AffinePlus& p) { return "affine(" + num(p.slope) + "," + num(p.offset) + ")"; },
      [](const fn::Saturating& p) { return "saturating(" + num(p.c) + ")"; },
      [](const fn::Angle& p) { return "angle(" + num(p.a) + ")"; },
      [](const fn::Smoothed& p) { return "smoothed(" + num(p.a) + "," + num(p.r) + ")"; },
      [](const fn::SmoothedInverse& p) { return "smoothed-inverse(" + num(p.a) + "," + num(p.r) + ")"; },
      [](const fn::PowerM& p) { return "power-m(" + std::to_string(p.m) + ")"; },
      [](const fn::PwlConcave& p) { return "pwl(" + std::to_string(p.breakpoints.size()) + ")"; },
      [](const fn::OverT& p) { return "over-t(" + p.inner->name() + ")"; },
      [](const fn::ConeCombination& c) {
        std::string s = "cone(";
        for (std::size_t i = 0; i < c.members.size(); ++i) {
          if (i) s += "+";
          s += num(c.weights[i]) + "*" + c.members[i].name();
        }
        return s + ")";
      },
  }, d_);
}

const ScalarFn& ScalarFn::require(FnClass c) const {
  if (!has(c)) throw ShapeValidationFailed(name() + " is not " + to_string(c));
  return *this;
}

bool validate_shape(const ScalarFn& f, FnClass c, const Grid& grid) {
  if (c == FnClass::OperatorConcaveCatalog) return whitelisted(f.descriptor());
  if (c == FnClass::ConvexVanishing && f.singular_at_zero()) return false;
  if (grid.points < 3) return false;

  const auto t = grid.nodes(f.singular_at_zero());
  std::vector<double> v(t.size());
  try {
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = f(t[i]);
  } catch (const DomainError&) {
    return false;
  }
  auto slack = [](double x) { return kShapeSlack * std::max(1.0, std::abs(x)); };
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < -slack(v[i])) return false;
  }

  switch (c) {
    case FnClass::ConcaveNonneg:
    case FnClass::ConvexVanishing: {
      const double sign = c == FnClass::ConcaveNonneg ? 1.0 : -1.0;
      for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double d2 = v[i - 1] - 2.0 * v[i] + v[i + 1];
        if (sign * d2 > slack(v[i])) return false;
      }
      if (c == FnClass::ConvexVanishing && std::abs(v.front()) > 1e-12) return false;
      return true;
    }
    case FnClass::DecreasingTgIncreasing:
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1] + slack(v[i - 1])) return false;
        if (t[i] * v[i] < t[i - 1] * v[i - 1] - slack(t[i - 1] * v[i - 1])) return false;
      }
      return true;
    case FnClass::OperatorConcaveCatalog: break;
  }
  return false;
}

double smoothed_converges(double a, std::span<const double> r_sequence, const Grid& grid) {
  if (r_sequence.empty()) throw BadSpec("empty r sequence");
  const double r = *std::min_element(r_sequence.begin(), r_sequence.end());
  const ScalarFn h = ScalarFn::smoothed(a, r);
  const ScalarFn g = ScalarFn::angle(a);
  double dev = 0.0;
  for (double t : grid.nodes()) dev = std::max(dev, std::abs(h(t) - g(t)));
  return dev;
}

ScalarFn cone_combine(std::span<const double> weights, std::span<const ScalarFn> members) {
  if (members.empty() || weights.size() != members.size())
    throw BadSpec("cone combination needs one weight per member");
  std::uint8_t common = 0xFF;
  for (const auto& m : members) common &= m.classes();
  if (common == 0) throw MixedClass("members share no hypothesis class");
  ScalarFn out(fn::ConeCombination{{weights.begin(), weights.end()}, {members.begin(), members.end()}});
  if ((out.classes() & common) != common) throw MixedClass("combination lost a member class");
  return out;
}

namespace {

std::vector<double> clamp_for(const ScalarFn& f, std::vector<double> lambda) {
  if (lambda.empty()) return lambda;
  const double top = std::max(std::abs(lambda.front()), std::abs(lambda.back()));
  const double scale = std::max(1.0, top);
  const double floor = kRoundoffFloor * static_cast<double>(lambda.size()) * top;
  for (auto& l : lambda) {
    if (f.singular_at_zero()) {
      if (!(l > 0.0)) throw DomainError(f.name() + " needs positive eigenvalues");
    } else {
      if (l < -kNegativeClampTol * scale) throw DomainError("eigenvalue below the clamp window");
      if (l <= floor) l = 0.0;
    }
  }
  return lambda;
}

}  // namespace

HermitianMatrix spectral_apply(const ScalarFn& f, const HermitianMatrix& a) {
  const Spectrum sp = eigh(a);
  auto lambda = clamp_for(f, sp.eigenvalues);
  for (auto& l : lambda) {
    l = f(l);
    if (!std::isfinite(l)) throw DomainError("function value is not finite");
  }
  return from_frame(sp.frame, lambda);
}

std::vector<double> spectral_values(const ScalarFn& f, const HermitianMatrix& a) {
  auto lambda = clamp_for(f, eigenvalues(a));
  for (auto& l : lambda) l = f(l);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return lambda;
}

}  // namespace normetry
