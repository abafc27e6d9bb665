#include "normetry/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "normetry/errors.hpp"
#include "normetry/linalg.hpp"

namespace normetry {
namespace {

void require_psd(const HermitianMatrix& h, const char* what, const CheckOptions& opt) {
  if (opt.enforce_hypotheses && !is_psd(h, kHypothesisTol))
    throw DomainError(std::string(what) + " must be positive semidefinite");
}

void require_pd(const HermitianMatrix& h, const char* what, const CheckOptions& opt) {
  if (opt.enforce_hypotheses && !is_pd(h))
    throw NotPositiveDefinite(std::string(what) + " must be positive definite");
}

void require_normal(const Matrix& x, const char* what, const CheckOptions& opt) {
  if (opt.enforce_hypotheses && !is_normal(x, kHypothesisTol))
    throw NotNormal(std::string(what) + " must be normal");
}

void require_contraction(const Matrix& x, const char* what, const CheckOptions& opt) {
  if (opt.enforce_hypotheses && !is_contraction(x, kHypothesisTol))
    throw NotAContraction(std::string(what) + " must be a contraction");
}

void require_class(const ScalarFn& f, FnClass c, const CheckOptions& opt) {
  if (opt.enforce_hypotheses) f.require(c);
}

void same_dim(std::initializer_list<std::size_t> dims) {
  if (dims.size() == 0) return;
  const std::size_t n = *dims.begin();
  for (std::size_t d : dims)
    if (d != n) throw DimensionMismatch("operands must share one dimension");
}

Verdict named(CheckId id, Verdict v) {
  v.check = to_string(id);
  return v;
}

Verdict loewner_verdict(CheckId id, const HermitianMatrix& lhs, const HermitianMatrix& rhs,
                        const CheckOptions& opt) {
  Verdict v;
  v.tolerance = opt.tol;
  v.records.push_back({"loewner", 0.0, lambda_min(rhs - lhs), loewner_margin(lhs, rhs), false});
  v.finalize();
  return named(id, v);
}

/// One primary record per norm of the grid: lhs(norm) versus rhs(norm).
template <class Lhs, class Rhs>
Verdict per_norm_verdict(CheckId id, std::size_t n, Lhs&& lhs, Rhs&& rhs, const CheckOptions& opt) {
  Verdict v;
  v.tolerance = opt.tol;
  for (const NormSpec& spec : norm_grid(n, opt.schatten)) {
    const double l = lhs(spec);
    const double r = rhs(spec);
    v.records.push_back({spec.label(), l, r, scaled_margin(l, r), false});
  }
  v.finalize();
  return named(id, v);
}

HermitianMatrix sqrt_psd(const HermitianMatrix& a) {
  return spectral_apply([](double t) { return std::sqrt(t); }, a, FnDomain::Nonnegative);
}

HermitianMatrix sandwich(const HermitianMatrix& outer, const HermitianMatrix& inner) {
  return HermitianMatrix(outer.matrix() * inner.matrix() * outer.matrix());
}

double top_eigenvalue_sum(std::span<const double> lambda, std::size_t i) { return lambda[i]; }

Verdict eigen_sum_verdict(CheckId id, const std::vector<double>& sum_side, const std::vector<double>& first,
                          const std::vector<double>& second, double weight,
                          std::span<const std::pair<std::size_t, std::size_t>> pairs, const CheckOptions& opt) {
  const std::size_t n = sum_side.size();
  Verdict v;
  v.tolerance = opt.tol;
  for (const auto& [j, k] : pairs) {
    if (j + k + 1 > n) {
      throw IndexOutOfRange("j + k + 1 = " + std::to_string(j + k + 1) + " exceeds n = " + std::to_string(n));
    }
    const double l = top_eigenvalue_sum(sum_side, j + k);
    const double r = weight * (first[j] + second[k]);
    v.records.push_back({"eig:j=" + std::to_string(j) + ",k=" + std::to_string(k), l, r, scaled_margin(l, r), false});
  }
  v.finalize();
  return named(id, v);
}

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; j + k + 1 <= n; ++k) out.emplace_back(j, k);
  return out;
}

Verdict eigen_sum_impl(const ScalarFn& f, const Matrix& a, const Matrix& b,
                       std::span<const std::pair<std::size_t, std::size_t>> pairs, const CheckOptions& opt) {
  require_class(f, FnClass::ConcaveNonneg, opt);
  same_dim({a.dim(), b.dim()});
  const bool psd_mode = is_hermitian(a, 1e-12) && is_hermitian(b, 1e-12) &&
                        is_psd(HermitianMatrix(a), kHypothesisTol) && is_psd(HermitianMatrix(b), kHypothesisTol);
  std::vector<double> sum_side;
  std::vector<double> first;
  std::vector<double> second;
  if (psd_mode) {
    const HermitianMatrix ha(a);
    const HermitianMatrix hb(b);
    sum_side = spectral_values(f, ha + hb);
    first = spectral_values(f, ha);
    second = spectral_values(f, hb);
  } else {
    sum_side = spectral_values(f, matrix_abs(a + b));
    first = spectral_values(f, matrix_abs(a));
    second = spectral_values(f, matrix_abs(b));
  }
  return eigen_sum_verdict(CheckId::EigenSum, sum_side, first, second, 1.0, pairs, opt);
}

Verdict prop_3_5_impl(const HermitianMatrix& s, const HermitianMatrix& t,
                      std::span<const std::pair<std::size_t, std::size_t>> pairs, const CheckOptions& opt) {
  same_dim({s.dim(), t.dim()});
  std::vector<double> lhs = eigenvalues(s + t);
  for (auto& l : lhs) l = std::abs(l);
  std::sort(lhs.begin(), lhs.end(), std::greater<>());
  const auto m = eigenvalues(HermitianMatrix(matrix_abs(s.matrix()).matrix() + matrix_abs(t.matrix()).matrix()));
  return eigen_sum_verdict(CheckId::Prop3_5, lhs, m, m, 0.5, pairs, opt);
}

double max_op_of_sums(std::initializer_list<std::pair<const HermitianMatrix*, const HermitianMatrix*>> sums) {
  double best = 0.0;
  for (const auto& [x, y] : sums) best = std::max(best, operator_norm(*x + *y));
  return best;
}

}  // namespace

Verdict check_thm_1_1(const ScalarFn& f, std::span<const HermitianMatrix> operands, const CheckOptions& opt) {
  if (operands.size() < 2) throw BadSpec("Theorem 1.1 needs at least two operands");
  require_class(f, FnClass::ConcaveNonneg, opt);
  const std::size_t n = operands.front().dim();
  Matrix sum(n);
  Matrix rhs(n);
  for (const auto& a : operands) {
    if (a.dim() != n) throw DimensionMismatch("operands must share one dimension");
    require_psd(a, "operand", opt);
    sum += a.matrix();
    rhs += spectral_apply(f, a).matrix();
  }
  const HermitianMatrix lhs = spectral_apply(f, HermitianMatrix(sum));
  return named(CheckId::Thm1_1, dominance_verdict(lhs.matrix(), HermitianMatrix(rhs).matrix(), opt.tol, opt.schatten));
}

Verdict check_thm_1_2(const ScalarFn& g, const HermitianMatrix& a, const HermitianMatrix& b,
                      const CheckOptions& opt) {
  require_class(g, FnClass::ConvexVanishing, opt);
  same_dim({a.dim(), b.dim()});
  require_psd(a, "A", opt);
  require_psd(b, "B", opt);
  const HermitianMatrix lhs = spectral_apply(g, a) + spectral_apply(g, b);
  const HermitianMatrix rhs = spectral_apply(g, a + b);
  return named(CheckId::Thm1_2, dominance_verdict(lhs.matrix(), rhs.matrix(), opt.tol, opt.schatten));
}

Verdict check_davis_hansen(const ScalarFn& f, const HermitianMatrix& a, const Matrix& z, const CheckOptions& opt) {
  require_class(f, FnClass::OperatorConcaveCatalog, opt);
  same_dim({a.dim(), z.dim()});
  require_psd(a, "A", opt);
  require_contraction(z, "Z", opt);
  const HermitianMatrix lhs = congruence(z, spectral_apply(f, a));
  const HermitianMatrix rhs = spectral_apply(f, congruence(z, a));
  return loewner_verdict(CheckId::DavisHansen, lhs, rhs, opt);
}

Verdict check_pinching_eq2(const ScalarFn& f, const HermitianMatrix& a, const HermitianMatrix& b,
                           const CheckOptions& opt) {
  require_class(f, FnClass::OperatorConcaveCatalog, opt);
  same_dim({a.dim(), b.dim()});
  require_pd(a, "A", opt);
  require_pd(b, "B", opt);
  const ScalarFn phi = ScalarFn::over_t(f);
  const HermitianMatrix middle = spectral_apply(phi, a + b);
  const HermitianMatrix lhs = sandwich(sqrt_psd(a), middle) + sandwich(sqrt_psd(b), middle);
  const HermitianMatrix rhs = spectral_apply(f, a) + spectral_apply(f, b);
  return loewner_verdict(CheckId::Pinching, lhs, rhs, opt);
}

Verdict check_prop_2_1(const ScalarFn& g, const HermitianMatrix& a, const HermitianMatrix& b,
                       const CheckOptions& opt) {
  require_class(g, FnClass::DecreasingTgIncreasing, opt);
  same_dim({a.dim(), b.dim()});
  require_psd(a, "A", opt);
  require_psd(b, "B", opt);
  const HermitianMatrix sum = a + b;
  if (g.singular_at_zero()) require_pd(sum, "A + B", opt);
  const HermitianMatrix g_sum = spectral_apply(g, sum);
  const HermitianMatrix lhs = spectral_apply([&g](double t) { return t == 0.0 ? 0.0 : t * g(t); }, sum, g.domain());
  const HermitianMatrix rhs = sandwich(sqrt_psd(a), g_sum) + sandwich(sqrt_psd(b), g_sum);
  return named(CheckId::Prop2_1, dominance_verdict(lhs.matrix(), rhs.matrix(), opt.tol, opt.schatten));
}

Verdict check_thm_2_4(const ScalarFn& f, const HermitianMatrix& a, const Matrix& z, const CheckOptions& opt) {
  require_class(f, FnClass::ConcaveNonneg, opt);
  same_dim({a.dim(), z.dim()});
  require_psd(a, "A", opt);
  if (opt.enforce_hypotheses && !is_expansive(z, kHypothesisTol)) throw NotExpansive("Z must satisfy Z*Z >= I");
  const HermitianMatrix lhs = spectral_apply(f, congruence(z, a));
  const HermitianMatrix rhs = congruence(z, spectral_apply(f, a));
  return named(CheckId::Thm2_4, dominance_verdict(lhs.matrix(), rhs.matrix(), opt.tol, opt.schatten));
}

Verdict check_eigen_sum(const ScalarFn& f, const Matrix& a, const Matrix& b, std::size_t j, std::size_t k,
                        const CheckOptions& opt) {
  const std::pair<std::size_t, std::size_t> pair{j, k};
  if (j + k + 1 > a.dim()) throw IndexOutOfRange("j + k + 1 exceeds n");
  return eigen_sum_impl(f, a, b, std::span(&pair, 1), opt);
}

Verdict check_eigen_sum_sweep(const ScalarFn& f, const Matrix& a, const Matrix& b, const CheckOptions& opt) {
  const auto pairs = all_pairs(a.dim());
  return eigen_sum_impl(f, a, b, pairs, opt);
}

Verdict check_prop_3_5_eigen(const HermitianMatrix& s, const HermitianMatrix& t, std::size_t j, std::size_t k,
                             const CheckOptions& opt) {
  const std::pair<std::size_t, std::size_t> pair{j, k};
  if (j + k + 1 > s.dim()) throw IndexOutOfRange("j + k + 1 exceeds n");
  return prop_3_5_impl(s, t, std::span(&pair, 1), opt);
}

Verdict check_prop_3_5_eigen_sweep(const HermitianMatrix& s, const HermitianMatrix& t, const CheckOptions& opt) {
  const auto pairs = all_pairs(s.dim());
  return prop_3_5_impl(s, t, pairs, opt);
}

Verdict check_cs_lemma(const HermitianMatrix& a1, const HermitianMatrix& a2, const HermitianMatrix& b1,
                       const HermitianMatrix& b2, const Matrix& c1, const Matrix& c2, const CheckOptions& opt) {
  same_dim({a1.dim(), a2.dim(), b1.dim(), b2.dim(), c1.dim(), c2.dim()});
  require_psd(a1, "A1", opt);
  require_psd(a2, "A2", opt);
  require_psd(b1, "B1", opt);
  require_psd(b2, "B2", opt);
  require_contraction(c1, "C1", opt);
  require_contraction(c2, "C2", opt);
  const Matrix lhs = a1.matrix() * c1 * b1.matrix() + a2.matrix() * c2 * b2.matrix();
  const Matrix ra = a1.matrix() * a1.matrix() + a2.matrix() * a2.matrix();
  const Matrix rb = b1.matrix() * b1.matrix() + b2.matrix() * b2.matrix();
  const SingularValues sl = singular_values(lhs);
  const SingularValues sa = singular_values(HermitianMatrix(ra).matrix());
  const SingularValues sb = singular_values(HermitianMatrix(rb).matrix());
  return per_norm_verdict(
      CheckId::CsLemma, a1.dim(), [&](const NormSpec& s) { return norm(sl, s); },
      [&](const NormSpec& s) { return std::sqrt(norm(sa, s)) * std::sqrt(norm(sb, s)); }, opt);
}

Verdict check_ineq_4(const Matrix& a, const Matrix& b, const CheckOptions& opt) {
  same_dim({a.dim(), b.dim()});
  const SingularValues sl = singular_values(a + b);
  const PolarParts pa = polar(a);
  const PolarParts pb = polar(b);
  const SingularValues s_abs = singular_values((pa.abs + pb.abs).matrix());
  const SingularValues s_abs_star = singular_values((pa.abs_star + pb.abs_star).matrix());
  return per_norm_verdict(
      CheckId::Ineq4, a.dim(), [&](const NormSpec& s) { return norm(sl, s); },
      [&](const NormSpec& s) { return std::sqrt(norm(s_abs, s)) * std::sqrt(norm(s_abs_star, s)); }, opt);
}

Verdict check_thm_3_1(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d, const CheckOptions& opt) {
  same_dim({a.dim(), b.dim(), c.dim(), d.dim()});
  require_normal(a, "A", opt);
  require_normal(b, "B", opt);
  require_normal(c, "C", opt);
  require_normal(d, "D", opt);
  const SingularValues lhs = singular_values(block_2x2(a, b, c, d));
  const HermitianMatrix rhs = matrix_abs(a) + matrix_abs(b) + matrix_abs(c) + matrix_abs(d);
  return named(CheckId::Thm3_1, dominance_verdict(lhs, singular_values(rhs.matrix()), opt.tol, opt.schatten));
}

Verdict check_thm_3_2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d, const CheckOptions& opt) {
  same_dim({a.dim(), b.dim(), c.dim(), d.dim()});
  require_normal(a, "A", opt);
  require_normal(b, "B", opt);
  require_normal(c, "C", opt);
  require_normal(d, "D", opt);
  const HermitianMatrix aa = matrix_abs(a);
  const HermitianMatrix ab = matrix_abs(b);
  const HermitianMatrix ac = matrix_abs(c);
  const HermitianMatrix ad = matrix_abs(d);
  const double lhs = operator_norm(block_2x2(a, b, c, d));
  const double rhs = max_op_of_sums({{&aa, &ab}, {&ac, &ad}, {&aa, &ac}, {&ab, &ad}});
  Verdict v;
  v.tolerance = opt.tol;
  v.records.push_back({"operator", lhs, rhs, scaled_margin(lhs, rhs), false});
  v.finalize();
  return named(CheckId::Thm3_2, v);
}

Verdict check_cor_3_3(const HermitianMatrix& a, const HermitianMatrix& b, const Matrix& x, const CheckOptions& opt) {
  same_dim({a.dim(), b.dim(), x.dim()});
  const std::size_t n = a.dim();
  const Matrix xs = x.adjoint();
  const double lhs = operator_norm(block_2x2(a.matrix(), xs, x, b.matrix()));
  const PolarParts px = polar(x);
  const HermitianMatrix abs_a = matrix_abs(a.matrix());
  const HermitianMatrix abs_b = matrix_abs(b.matrix());
  const double rhs = max_op_of_sums({{&abs_a, &px.abs}, {&abs_b, &px.abs_star}});

  const Matrix zero(n);
  const Matrix top_left = block_2x2(zero, zero, zero, a.matrix());
  const Matrix off = block_2x2(zero, x, xs, zero);
  const Matrix bottom_right = block_2x2(b.matrix(), zero, zero, zero);
  const Verdict embedded = check_thm_3_2(top_left, off, off, bottom_right, opt);

  Verdict v;
  v.tolerance = opt.tol;
  v.records.push_back({"operator", lhs, rhs, scaled_margin(lhs, rhs), false});
  for (auto r : embedded.records) {
    r.norm = "embedded:" + r.norm;
    v.records.push_back(r);
  }
  v.finalize();
  return named(CheckId::Cor3_3, v);
}

Verdict check_prop_3_4(const Matrix& a, const Matrix& b, const CheckOptions& opt) {
  same_dim({a.dim(), b.dim()});
  require_normal(a, "A", opt);
  require_normal(b, "B", opt);
  const HermitianMatrix rhs = matrix_abs(a) + matrix_abs(b);
  return named(CheckId::Prop3_4, dominance_verdict(a + b, rhs.matrix(), opt.tol, opt.schatten));
}

Verdict check_ineq_5(const HermitianMatrix& a, const HermitianMatrix& b, cplx z, unsigned m, const CheckOptions& opt) {
  if (m < 1) throw BadSpec("power m must be >= 1");
  same_dim({a.dim(), b.dim()});
  require_psd(a, "A", opt);
  require_psd(b, "B", opt);
  const Matrix lhs = power(a.matrix() + z * b.matrix(), m);
  const Matrix rhs = power(HermitianMatrix(a.matrix() + std::abs(z) * b.matrix()).matrix(), m);
  // Powers of a Hermitian matrix are Hermitian; restore the exact symmetry
  // so the singular values come from the Hermitian path on both sides.
  const Matrix rhs_h = HermitianMatrix(rhs).matrix();
  const Matrix lhs_h = z.imag() == 0.0 ? HermitianMatrix(lhs).matrix() : lhs;
  return named(CheckId::Ineq5, dominance_verdict(lhs_h, rhs_h, opt.tol, opt.schatten));
}

double check_identity_6(const Matrix& a, const Matrix& b, unsigned m) {
  if (m < 1) throw BadSpec("power m must be >= 1");
  same_dim({a.dim(), b.dim()});
  const Matrix target = power(a, m) + power(b, m);
  Matrix avg(a.dim());
  for (unsigned j = 0; j < m; ++j) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
    avg += power(a + w * b, m);
  }
  avg *= 1.0 / static_cast<double>(m);
  return operator_norm(target - avg) / std::max(1.0, operator_norm(target));
}

Verdict identity_6_verdict(const Matrix& a, const Matrix& b, unsigned m) {
  const double residual = check_identity_6(a, b, m);
  Verdict v;
  v.check = to_string(CheckId::Identity6);
  v.tolerance = kIdentityTol;
  v.records.push_back({"residual:operator", residual, 0.0, -residual, false});
  v.finalize();
  return v;
}

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids{
      CheckId::Thm1_1, CheckId::Thm1_2, CheckId::DavisHansen, CheckId::Pinching, CheckId::Prop2_1,
      CheckId::Thm2_4, CheckId::EigenSum, CheckId::CsLemma, CheckId::Ineq4, CheckId::Thm3_1,
      CheckId::Thm3_2, CheckId::Cor3_3, CheckId::Prop3_4, CheckId::Prop3_5, CheckId::Ineq5,
      CheckId::Identity6};
  return ids;
}

std::string to_string(CheckId id) {
  switch (id) {
    case CheckId::Thm1_1: return "thm1.1";
    case CheckId::Thm1_2: return "thm1.2";
    case CheckId::DavisHansen: return "davis-hansen";
    case CheckId::Pinching: return "pinching";
    case CheckId::Prop2_1: return "prop2.1";
    case CheckId::Thm2_4: return "thm2.4";
    case CheckId::EigenSum: return "eigen-sum";
    case CheckId::CsLemma: return "cs-lemma";
    case CheckId::Ineq4: return "ineq4";
    case CheckId::Thm3_1: return "thm3.1";
    case CheckId::Thm3_2: return "thm3.2";
    case CheckId::Cor3_3: return "cor3.3";
    case CheckId::Prop3_4: return "prop3.4";
    case CheckId::Prop3_5: return "prop3.5";
    case CheckId::Ineq5: return "ineq5";
    case CheckId::Identity6: return "identity6";
  }
  return "?";
}

std::optional<FnClass> required_class(CheckId id) {
  switch (id) {
    case CheckId::Thm1_1:
    case CheckId::Thm2_4:
    case CheckId::EigenSum: return FnClass::ConcaveNonneg;
    case CheckId::Thm1_2: return FnClass::ConvexVanishing;
    case CheckId::DavisHansen:
    case CheckId::Pinching: return FnClass::OperatorConcaveCatalog;
    case CheckId::Prop2_1: return FnClass::DecreasingTgIncreasing;
    default: return std::nullopt;
  }
}

CheckId parse_check_id(const std::string& s) {
  for (CheckId id : all_checks())
    if (to_string(id) == s) return id;
  throw UnknownCheck("no checker named '" + s + "'");
}

namespace {

struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { bytes(&v, sizeof v); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
};

}  // namespace

std::uint64_t fingerprint_hash(const CheckRequest& req) {
  Fnv h;
  h.str(to_string(req.id));
  h.u64(req.operands.size());
  for (const auto& m : req.operands) {
    h.u64(m.dim());
    for (const cplx& z : m.data()) {
      h.f64(z.real());
      h.f64(z.imag());
    }
  }
  h.str(req.function ? req.function->name() : std::string("-"));
  h.u64(req.j ? *req.j + 1 : 0);
  h.u64(req.k ? *req.k + 1 : 0);
  h.u64(req.m);
  h.f64(req.z.real());
  h.f64(req.z.imag());
  return h.h;
}

Verdict evaluate(const CheckRequest& req, CheckOptions opt) {
  if (req.tolerance) opt.tol = *req.tolerance;
  const auto& ops = req.operands;
  auto need = [&](std::size_t count) {
    if (ops.size() != count)
      throw BadSpec(to_string(req.id) + " expects " + std::to_string(count) + " operands, got " +
                    std::to_string(ops.size()));
  };
  auto fn = [&]() -> const ScalarFn& {
    if (!req.function) throw BadSpec(to_string(req.id) + " needs a function");
    return *req.function;
  };
  auto herm = [&](std::size_t i) { return HermitianMatrix(ops[i]); };

  Verdict v;
  switch (req.id) {
    case CheckId::Thm1_1: {
      if (ops.size() < 2) throw BadSpec("thm1.1 expects at least two operands");
      std::vector<HermitianMatrix> hs;
      for (const auto& m : ops) hs.emplace_back(m);
      v = check_thm_1_1(fn(), hs, opt);
      break;
    }
    case CheckId::Thm1_2: need(2); v = check_thm_1_2(fn(), herm(0), herm(1), opt); break;
    case CheckId::DavisHansen: need(2); v = check_davis_hansen(fn(), herm(0), ops[1], opt); break;
    case CheckId::Pinching: need(2); v = check_pinching_eq2(fn(), herm(0), herm(1), opt); break;
    case CheckId::Prop2_1: need(2); v = check_prop_2_1(fn(), herm(0), herm(1), opt); break;
    case CheckId::Thm2_4: need(2); v = check_thm_2_4(fn(), herm(0), ops[1], opt); break;
    case CheckId::EigenSum:
      need(2);
      v = (req.j && req.k) ? check_eigen_sum(fn(), ops[0], ops[1], *req.j, *req.k, opt)
                           : check_eigen_sum_sweep(fn(), ops[0], ops[1], opt);
      break;
    case CheckId::CsLemma:
      need(6);
      v = check_cs_lemma(herm(0), herm(1), herm(2), herm(3), ops[4], ops[5], opt);
      break;
    case CheckId::Ineq4: need(2); v = check_ineq_4(ops[0], ops[1], opt); break;
    case CheckId::Thm3_1: need(4); v = check_thm_3_1(ops[0], ops[1], ops[2], ops[3], opt); break;
    case CheckId::Thm3_2: need(4); v = check_thm_3_2(ops[0], ops[1], ops[2], ops[3], opt); break;
    case CheckId::Cor3_3: need(3); v = check_cor_3_3(herm(0), herm(1), ops[2], opt); break;
    case CheckId::Prop3_4: need(2); v = check_prop_3_4(ops[0], ops[1], opt); break;
    case CheckId::Prop3_5:
      need(2);
      v = (req.j && req.k) ? check_prop_3_5_eigen(herm(0), herm(1), *req.j, *req.k, opt)
                           : check_prop_3_5_eigen_sweep(herm(0), herm(1), opt);
      break;
    case CheckId::Ineq5: need(2); v = check_ineq_5(herm(0), herm(1), req.z, req.m, opt); break;
    case CheckId::Identity6: {
      need(2);
      v = identity_6_verdict(ops[0], ops[1], req.m);
      if (req.tolerance) {
        v.tolerance = *req.tolerance;
        v.finalize();
      }
      break;
    }
  }
  v.fingerprint.hash = fingerprint_hash(req);
  return v;
}

}  // namespace normetry
