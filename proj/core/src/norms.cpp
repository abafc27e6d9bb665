#include "normetry/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "normetry/errors.hpp"
#include "normetry/linalg.hpp"

namespace normetry {

double scaled_margin(double lhs, double rhs) { return (rhs - lhs) / std::max(1.0, rhs); }

void Verdict::finalize() {
  min_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : records)
    if (!r.cross_check) min_margin = std::min(min_margin, r.margin);
  pass = min_margin >= -tolerance;
  consistent = true;
  if (pass) {
    for (const auto& r : records)
      if (r.cross_check && r.margin < -tolerance) consistent = false;
  }
}

NormSpec NormSpec::ky_fan(std::size_t k) {
  if (k == 0) throw BadSpec("Ky Fan index must be >= 1");
  return {Kind::KyFan, k, 0.0};
}

NormSpec NormSpec::schatten(double p) {
  if (!(p >= 1.0)) throw BadSpec("Schatten exponent must be >= 1");
  return {Kind::Schatten, 0, p};
}

NormSpec NormSpec::op() { return {Kind::Operator, 0, 0.0}; }
NormSpec NormSpec::trace() { return {Kind::Trace, 0, 0.0}; }

std::string NormSpec::label() const {
  switch (kind_) {
    case Kind::KyFan: return "kyfan:" + std::to_string(k_);
    case Kind::Operator: return "operator";
    case Kind::Trace: return "trace";
    case Kind::Schatten: {
      if (std::isinf(p_)) return "schatten:inf";
      std::ostringstream os;
      os << "schatten:" << p_;
      return os.str();
    }
  }
  return {};
}

NormSpec NormSpec::parse(const std::string& label) {
  if (label == "operator") return op();
  if (label == "trace") return trace();
  const auto colon = label.find(':');
  if (colon == std::string::npos) throw BadSpec("unknown norm '" + label + "'");
  const std::string head = label.substr(0, colon);
  const std::string tail = label.substr(colon + 1);
  try {
    if (head == "kyfan") return ky_fan(std::stoul(tail));
    if (head == "schatten") {
      if (tail == "inf") return schatten(std::numeric_limits<double>::infinity());
      return schatten(std::stod(tail));
    }
  } catch (const std::logic_error&) {
    throw BadSpec("malformed norm '" + label + "'");
  }
  throw BadSpec("unknown norm '" + label + "'");
}

SingularValues::SingularValues(std::vector<double> values) : v_(std::move(values)) {
  std::sort(v_.begin(), v_.end(), std::greater<>());
  const double top = v_.empty() ? 0.0 : std::max(0.0, v_.front());
  for (auto& x : v_)
    if (x < 1e-12 * top || x < 0.0) x = 0.0;
}

double SingularValues::partial_sum(std::size_t k) const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(k, v_.size()); ++i) s += v_[i];
  return s;
}

SingularValues singular_values(const Matrix& x) {
  if (x.exactly_hermitian()) {
    auto ev = eigenvalues(HermitianMatrix(x));
    for (auto& v : ev) v = std::abs(v);
    return SingularValues(std::move(ev));
  }
  return SingularValues(svd(x).values);
}

namespace {

double schatten_value(const std::vector<double>& s, double p) {
  if (s.empty()) return 0.0;
  const double top = s.front();
  if (std::isinf(p) || top == 0.0) return top;
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / top, p);
  return top * std::pow(acc, 1.0 / p);
}

}  // namespace

double norm(const SingularValues& s, const NormSpec& spec) {
  switch (spec.kind()) {
    case NormSpec::Kind::KyFan:
      if (spec.k() > s.size()) throw BadSpec("Ky Fan index exceeds dimension");
      return s.partial_sum(spec.k());
    case NormSpec::Kind::Operator: return s.size() == 0 ? 0.0 : s[0];
    case NormSpec::Kind::Trace: return s.partial_sum(s.size());
    case NormSpec::Kind::Schatten:
      if (spec.p() == 1.0) return s.partial_sum(s.size());
      return schatten_value(s.values(), spec.p());
  }
  return 0.0;
}

double norm(const Matrix& x, const NormSpec& spec) { return norm(singular_values(x), spec); }

bool weakly_majorized(const SingularValues& x, const SingularValues& y, double tol) {
  const std::size_t m = std::max(x.size(), y.size());
  const double slack = tol * std::max(1.0, y.partial_sum(y.size()));
  for (std::size_t k = 1; k <= m; ++k)
    if (x.partial_sum(k) > y.partial_sum(k) + slack) return false;
  return true;
}

Verdict dominance_verdict(const SingularValues& lhs, const SingularValues& rhs, double tol,
                          std::span<const double> schatten) {
  Verdict v;
  v.tolerance = tol;
  const std::size_t m = std::max(lhs.size(), rhs.size());
  for (std::size_t k = 1; k <= m; ++k) {
    const double l = lhs.partial_sum(k);
    const double r = rhs.partial_sum(k);
    v.records.push_back({NormSpec::ky_fan(k).label(), l, r, scaled_margin(l, r), false});
  }
  for (double p : schatten) {
    const NormSpec spec = NormSpec::schatten(p);
    const double l = norm(lhs, spec);
    const double r = norm(rhs, spec);
    v.records.push_back({spec.label(), l, r, scaled_margin(l, r), true});
  }
  v.finalize();
  return v;
}

Verdict dominance_verdict(const Matrix& lhs, const Matrix& rhs, double tol,
                          std::span<const double> schatten) {
  if (lhs.dim() != rhs.dim()) throw DimensionMismatch("dominance operands differ in size");
  return dominance_verdict(singular_values(lhs), singular_values(rhs), tol, schatten);
}

std::vector<NormSpec> norm_grid(std::size_t n, std::span<const double> schatten) {
  std::vector<NormSpec> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(NormSpec::ky_fan(k));
  for (double p : schatten) out.push_back(NormSpec::schatten(p));
  return out;
}

}  // namespace normetry
