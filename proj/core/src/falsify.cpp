#include "normetry/falsify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "normetry/errors.hpp"
#include "normetry/linalg.hpp"

namespace normetry {

std::string to_string(MutationKind k) {
  switch (k) {
    case MutationKind::SwapFunctionClass: return "swap-function-class";
    case MutationKind::DropVanishing: return "drop-vanishing";
    case MutationKind::DropNormality: return "drop-normality";
    case MutationKind::DropExpansive: return "drop-expansive";
  }
  return "?";
}

std::string to_string(Expectation e) {
  return e == Expectation::MustViolate ? "must-violate" : "exploratory";
}

MutationKind parse_mutation_kind(const std::string& s) {
  for (MutationKind k : {MutationKind::SwapFunctionClass, MutationKind::DropVanishing, MutationKind::DropNormality,
                         MutationKind::DropExpansive}) {
    if (to_string(k) == s) return k;
  }
  throw BadSpec("unknown mutation '" + s + "'");
}

Mutation make_mutation(CheckId target, MutationKind kind) {
  switch (kind) {
    case MutationKind::SwapFunctionClass:
      if (target == CheckId::Thm1_1) return {target, kind, Expectation::MustViolate};
      break;
    case MutationKind::DropVanishing:
      if (target == CheckId::Thm1_2) return {target, kind, Expectation::MustViolate};
      break;
    case MutationKind::DropExpansive:
      if (target == CheckId::Thm2_4) return {target, kind, Expectation::MustViolate};
      break;
    case MutationKind::DropNormality:
      if (target == CheckId::Thm3_1 || target == CheckId::Thm3_2 || target == CheckId::Prop3_4)
        return {target, kind, Expectation::Exploratory};
      break;
  }
  throw BadSpec("mutation " + to_string(kind) + " does not apply to " + to_string(target));
}

double replay_margin(const Certificate& cert) {
  CheckOptions opt;
  opt.enforce_hypotheses = !cert.mutation.has_value();
  return evaluate(cert.request, opt).min_margin;
}

namespace {

ScalarFn t_squared_plus_one() {
  return ScalarFn(fn::ConeCombination{{1.0, 1.0}, {ScalarFn::power_m(2), ScalarFn::affine(0.0, 1.0)}});
}

std::vector<ScalarFn> concave_catalog() {
  const std::vector<double> w{0.5, 2.0};
  const std::vector<ScalarFn> members{ScalarFn::sqrt(), ScalarFn::log1p()};
  return {ScalarFn::sqrt(),
          ScalarFn::power(0.3),
          ScalarFn::log1p(),
          ScalarFn::saturating(1.0),
          ScalarFn::smoothed_inverse(1.0, 0.01),
          ScalarFn::pwl({{0.0, 0.0}, {0.5, 1.0}, {2.0, 2.0}, {6.0, 2.8}}),
          ScalarFn::affine(0.5, 0.25),
          cone_combine(w, members)};
}

std::vector<ScalarFn> convex_vanishing_catalog() {
  const std::vector<double> w{1.0, 0.5};
  const std::vector<ScalarFn> members{ScalarFn::angle(0.5), ScalarFn::angle(2.0)};
  return {ScalarFn::power_m(2),      ScalarFn::power_m(3),     ScalarFn::angle(0.5),
          ScalarFn::angle(1.5),      ScalarFn::smoothed(1.0, 0.01), ScalarFn::power(1.0),
          cone_combine(w, members)};
}

std::vector<ScalarFn> operator_concave_catalog() {
  return {ScalarFn::sqrt(),          ScalarFn::power(0.25), ScalarFn::power(0.75),
          ScalarFn::log1p(),         ScalarFn::saturating(0.5), ScalarFn::smoothed_inverse(1.0, 0.1)};
}

std::vector<ScalarFn> decreasing_catalog() {
  return {ScalarFn::over_t(ScalarFn::sqrt()), ScalarFn::over_t(ScalarFn::log1p()),
          ScalarFn::over_t(ScalarFn::saturating(1.0)), ScalarFn::over_t(ScalarFn::power(0.3)),
          ScalarFn::affine(0.0, 1.0)};
}

double random_scale(Rng& rng) { return std::exp(std::log(0.25) + rng.uniform() * std::log(16.0)); }

Matrix gen(GenKind kind, std::size_t n, std::uint64_t seed, double scale, double min_eig = 0.1) {
  GenSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.seed = seed;
  spec.scale = scale;
  spec.min_eig = std::min(min_eig, scale);
  return generate(spec);
}

// PSD with the lower part of its spectrum removed.
Matrix low_rank_psd(std::size_t n, std::uint64_t seed, double scale, std::size_t rank) {
  const Spectrum sp = eigh(HermitianMatrix(gen(GenKind::PSD, n, seed, scale)));
  std::vector<double> lambda = sp.eigenvalues;
  for (std::size_t i = rank; i < n; ++i) lambda[i] = 0.0;
  return from_frame(sp.frame, lambda).matrix();
}

Matrix orthogonal_projection(std::size_t n, std::uint64_t seed, std::size_t rank) {
  Rng rng(seed);
  const Matrix q = random_unitary(rng, n);
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < rank && i < n; ++i) d[i] = 1.0;
  return from_frame(q, d).matrix();
}

}  // namespace

std::vector<ScalarFn> catalog_for(CheckId id) {
  switch (id) {
    case CheckId::Thm1_1:
    case CheckId::Thm2_4:
    case CheckId::EigenSum: return concave_catalog();
    case CheckId::Thm1_2: return convex_vanishing_catalog();
    case CheckId::DavisHansen:
    case CheckId::Pinching: return operator_concave_catalog();
    case CheckId::Prop2_1: return decreasing_catalog();
    default: return {};
  }
}

std::uint64_t trial_seed(std::uint64_t root_seed, CheckId id, std::size_t n, std::size_t trial) {
  const std::uint64_t check_root = derive_stream(root_seed, static_cast<std::uint64_t>(id));
  return derive_stream(check_root, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(trial));
}

CheckRequest make_trial(CheckId id, std::size_t n, std::uint64_t seed, std::size_t trial,
                        const std::optional<Mutation>& mutation, const std::vector<ScalarFn>& functions) {
  if (n < 1) throw BadSpec("dimension must be >= 1");
  Rng rng(seed);
  std::uint64_t next = 0;
  auto sub = [&] { return derive_stream(seed, next++); };
  const auto kind = mutation ? std::optional(mutation->kind) : std::nullopt;

  // Every fifth trial uses rank-deficient PSD operands where the checker allows it.
  const bool adversarial = trial % 5 == 4 && n > 1;
  auto psd = [&] {
    const double s = random_scale(rng);
    return adversarial ? low_rank_psd(n, sub(), s, 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n - 1)))
                       : gen(GenKind::PSD, n, sub(), s);
  };
  auto pd = [&] {
    const double s = random_scale(rng);
    return gen(GenKind::PD, n, sub(), s, 0.05 * s);
  };
  auto of = [&](GenKind k) { return gen(k, n, sub(), random_scale(rng)); };

  CheckRequest req;
  req.id = id;
  const auto catalog = functions.empty() ? catalog_for(id) : functions;
  if (!catalog.empty()) req.function = catalog[trial % catalog.size()];

  switch (id) {
    case CheckId::Thm1_1: {
      if (kind == MutationKind::SwapFunctionClass)
        req.function = trial % 2 == 0 ? ScalarFn::power_m(2) : ScalarFn::power_m(3);
      const std::size_t count = 2 + trial % 3;
      for (std::size_t i = 0; i < count; ++i) req.operands.push_back(psd());
      break;
    }
    case CheckId::Thm1_2:
      if (kind == MutationKind::DropVanishing)
        req.function = trial % 2 == 0 ? t_squared_plus_one() : ScalarFn::affine(1.0, 1.0);
      req.operands = {psd(), psd()};
      break;
    case CheckId::DavisHansen: {
      Matrix a = psd();
      Matrix z = trial % 2 == 0 ? gen(GenKind::Contraction, n, sub(), 1.0)
                                : orthogonal_projection(n, sub(), 1 + trial % n);
      req.operands = {std::move(a), std::move(z)};
      break;
    }
    case CheckId::Pinching:
    case CheckId::Prop2_1:
      req.operands = {pd(), pd()};
      break;
    case CheckId::Thm2_4: {
      Matrix a = psd();
      Matrix z = kind == MutationKind::DropExpansive ? gen(GenKind::Contraction, n, sub(), 1.0)
                                                     : gen(GenKind::Expansive, n, sub(), random_scale(rng));
      req.operands = {std::move(a), std::move(z)};
      break;
    }
    case CheckId::EigenSum:
      if (trial % 2 == 0) {
        req.operands = {psd(), psd()};
      } else {
        Matrix a = of(GenKind::GeneralComplex);
        Matrix b = of(GenKind::GeneralComplex);
        req.operands = {std::move(a), std::move(b)};
      }
      break;
    case CheckId::CsLemma:
      for (int i = 0; i < 4; ++i) req.operands.push_back(psd());
      for (int i = 0; i < 2; ++i) req.operands.push_back(gen(GenKind::Contraction, n, sub(), 1.0));
      break;
    case CheckId::Ineq4: {
      Matrix a = of(GenKind::GeneralComplex);
      Matrix b = of(GenKind::GeneralComplex);
      req.operands = {std::move(a), std::move(b)};
      break;
    }
    case CheckId::Thm3_1:
    case CheckId::Thm3_2:
    case CheckId::Prop3_4: {
      const GenKind block = kind == MutationKind::DropNormality ? GenKind::GeneralComplex : GenKind::Normal;
      const int count = id == CheckId::Prop3_4 ? 2 : 4;
      for (int i = 0; i < count; ++i) req.operands.push_back(of(block));
      break;
    }
    case CheckId::Cor3_3: {
      Matrix a = of(GenKind::Hermitian);
      Matrix b = of(GenKind::Hermitian);
      Matrix x = of(GenKind::GeneralComplex);
      req.operands = {std::move(a), std::move(b), std::move(x)};
      break;
    }
    case CheckId::Prop3_5: {
      Matrix s = of(GenKind::Hermitian);
      Matrix t = of(GenKind::Hermitian);
      req.operands = {std::move(s), std::move(t)};
      break;
    }
    case CheckId::Ineq5: {
      req.operands = {psd(), psd()};
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      req.z = {re, im};
      req.m = 1 + static_cast<unsigned>(trial % 4);
      break;
    }
    case CheckId::Identity6:
      req.operands = {psd(), psd()};
      req.m = 1 + static_cast<unsigned>(trial % 8);
      break;
  }
  return req;
}

CheckRequest mutation_witness(const Mutation& m) {
  CheckRequest req;
  req.id = m.target;
  const Matrix id2 = Matrix::identity(2);
  switch (m.kind) {
    case MutationKind::SwapFunctionClass:
      req.function = ScalarFn::power_m(2);
      req.operands = {id2, id2};
      break;
    case MutationKind::DropVanishing:
      req.function = t_squared_plus_one();
      req.operands = {Matrix(2), Matrix(2)};
      break;
    case MutationKind::DropExpansive:
      req.function = ScalarFn::sqrt();
      req.operands = {id2, 0.5 * id2};
      break;
    case MutationKind::DropNormality:
      throw BadSpec("exploratory mutations carry no witness");
  }
  return req;
}

bool CampaignReport::ok() const {
  if (!mutation) return violations.empty() && inconsistencies == 0;
  if (mutation->expectation == Expectation::MustViolate) return !violations.empty();
  return true;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  if (config.trials < 1) throw BadSpec("trials must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  CampaignReport report;
  report.check = config.check;
  report.mutation = config.mutation;
  report.min_margin = std::numeric_limits<double>::infinity();

  CheckOptions opt = config.options;
  if (config.mutation) opt.enforce_hypotheses = false;

  auto record = [&](CheckRequest req, std::uint64_t seed, std::size_t dim, std::size_t trial) {
    Verdict v = evaluate(req, opt);
    v.fingerprint.seed = seed;
    ++report.trials_run;
    report.min_margin = std::min(report.min_margin, v.min_margin);
    if (!v.consistent) ++report.inconsistencies;
    const std::string fname = req.function ? req.function->name() : std::string("-");
    Certificate cert{std::move(req), config.mutation, seed, v, v.min_margin, kToolVersion};
    if (!v.pass) report.violations.push_back(cert);
    if (config.keep_all) report.records.push_back({dim, trial, fname, std::move(cert)});
  };

  if (config.mutation && config.mutation->expectation == Expectation::MustViolate) {
    CheckRequest w = mutation_witness(*config.mutation);
    const std::size_t dim = w.operands.front().dim();
    record(std::move(w), 0, dim, 0);
  }
  for (std::size_t n : config.dims) {
    for (std::size_t t = 0; t < config.trials; ++t) {
      const std::uint64_t seed = trial_seed(config.root_seed, config.check, n, t);
      record(make_trial(config.check, n, seed, t, config.mutation, config.functions), seed, n, t);
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Tightness search -------------------------------------------------------------

namespace {

enum class Role { PSD, PD, Hermitian, Normal, Contraction, Expansive, General };

bool looks_psd(const Matrix& m) {
  return is_hermitian(m, 1e-12) && is_psd(HermitianMatrix(m), kHypothesisTol);
}

std::vector<Role> roles_for(const CheckRequest& req) {
  const std::size_t count = req.operands.size();
  switch (req.id) {
    case CheckId::Thm1_1:
    case CheckId::Thm1_2:
    case CheckId::Ineq5:
    case CheckId::Identity6: return std::vector<Role>(count, Role::PSD);
    case CheckId::DavisHansen: return {Role::PSD, Role::Contraction};
    case CheckId::Pinching: return {Role::PD, Role::PD};
    case CheckId::Prop2_1: {
      const bool singular = req.function && req.function->singular_at_zero();
      return std::vector<Role>(2, singular ? Role::PD : Role::PSD);
    }
    case CheckId::Thm2_4: return {Role::PSD, Role::Expansive};
    case CheckId::EigenSum: {
      const bool psd = std::all_of(req.operands.begin(), req.operands.end(), looks_psd);
      return std::vector<Role>(count, psd ? Role::PSD : Role::General);
    }
    case CheckId::CsLemma:
      return {Role::PSD, Role::PSD, Role::PSD, Role::PSD, Role::Contraction, Role::Contraction};
    case CheckId::Ineq4: return {Role::General, Role::General};
    case CheckId::Thm3_1:
    case CheckId::Thm3_2:
    case CheckId::Prop3_4: return std::vector<Role>(count, Role::Normal);
    case CheckId::Cor3_3: return {Role::Hermitian, Role::Hermitian, Role::General};
    case CheckId::Prop3_5: return {Role::Hermitian, Role::Hermitian};
  }
  return std::vector<Role>(count, Role::General);
}

Matrix project(const Matrix& x, Role role) {
  const std::size_t n = x.dim();
  switch (role) {
    case Role::General: return x;
    case Role::Hermitian: return HermitianMatrix(x).matrix();
    case Role::PSD:
    case Role::PD: {
      const Spectrum sp = eigh(HermitianMatrix(x));
      const double top = std::max(0.0, sp.eigenvalues.front());
      const double floor = role == Role::PD ? 1e-3 * std::max(1.0, top) : 0.0;
      std::vector<double> lambda = sp.eigenvalues;
      for (auto& l : lambda) l = std::max(l, floor);
      return from_frame(sp.frame, lambda).matrix();
    }
    case Role::Normal: {
      const Matrix v = eigh(HermitianMatrix(x)).frame;
      const Matrix rotated = v.adjoint() * x * v;
      std::vector<cplx> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = rotated(i, i);
      return v * Matrix::diagonal(std::span<const cplx>(d)) * v.adjoint();
    }
    case Role::Contraction: {
      const double s = operator_norm(x);
      return s > 1.0 ? (1.0 / s) * x : x;
    }
    case Role::Expansive: {
      const Svd s = svd(x);
      std::vector<double> sigma = s.values;
      for (auto& v : sigma) v = std::max(v, 1.0);
      std::vector<cplx> d(sigma.begin(), sigma.end());
      return s.left * Matrix::diagonal(std::span<const cplx>(d)) * s.right.adjoint();
    }
  }
  return x;
}

}  // namespace

std::pair<CheckRequest, double> minimize_margin(const CheckRequest& initial, std::size_t steps, double step_scale,
                                                std::uint64_t root_seed, const CheckOptions& opt) {
  CheckRequest best = initial;
  double best_margin = evaluate(best, opt).min_margin;
  const auto roles = roles_for(initial);
  Rng rng(root_seed);
  double step = step_scale;
  std::size_t rejected = 0;

  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(best.operands.size()));
    const Matrix& x = best.operands[i];
    const std::size_t n = x.dim();
    Matrix g = gaussian_matrix(rng, n);
    const double size = std::max(1.0, x.frobenius_norm() / std::sqrt(static_cast<double>(n)));
    g *= step * size / g.frobenius_norm();

    CheckRequest candidate = best;
    bool accepted = false;
    try {
      candidate.operands[i] = project(x + g, roles[i]);
      const double m = evaluate(candidate, opt).min_margin;
      if (m < best_margin) {
        best = std::move(candidate);
        best_margin = m;
        accepted = true;
      }
    } catch (const ConvergenceFailure&) {
      throw;
    } catch (const Error&) {
      // The projection landed just outside a hypothesis guard; drop it.
    }
    if (accepted) {
      rejected = 0;
    } else if (++rejected % 50 == 0) {
      step *= 0.9;
    }
  }
  return {std::move(best), best_margin};
}

// Unitary certificates -----------------------------------------------------------

namespace {

Matrix reversal(std::size_t n) {
  Matrix p(n);
  for (std::size_t i = 0; i < n; ++i) p(i, n - 1 - i) = 1.0;
  return p;
}

Matrix near_identity_unitary(Rng& rng, std::size_t n, double spread) {
  Matrix g = gaussian_matrix(rng, n);
  g *= spread;
  return polar(Matrix::identity(n) + g).u;
}

}  // namespace

std::optional<UnitaryCertificate> search_unitary_certificate(UnitaryStatement statement, const ScalarFn& f,
                                                             const HermitianMatrix& a, const HermitianMatrix& b,
                                                             std::size_t budget, std::uint64_t seed) {
  if (a.dim() != b.dim()) throw DimensionMismatch("unitary search operands");
  const std::size_t n = a.dim();
  HermitianMatrix lhs;
  HermitianMatrix x;
  HermitianMatrix y;
  if (statement == UnitaryStatement::Thm2_5) {
    lhs = spectral_apply(f, a + b);
    x = spectral_apply(f, a);
    y = spectral_apply(f, b);
  } else {
    lhs = matrix_abs((a + b).matrix());
    x = 0.5 * (matrix_abs(a.matrix()) + matrix_abs(b.matrix()));
    y = x;
  }
  constexpr double kTol = 1e-8;
  std::size_t attempts = 0;
  auto attempt = [&](const Matrix& u, const Matrix& v) -> std::optional<UnitaryCertificate> {
    ++attempts;
    const HermitianMatrix rhs = HermitianMatrix(u * x.matrix() * u.adjoint() + v * y.matrix() * v.adjoint());
    const double margin = loewner_margin(lhs, rhs);
    if (margin >= -kTol) return UnitaryCertificate{u, v, margin, attempts};
    return std::nullopt;
  };

  const Matrix id = Matrix::identity(n);
  const Matrix wl = eigh(lhs).frame;
  const Matrix wx = eigh(x).frame;
  const Matrix wy = eigh(y).frame;
  const Matrix rev = reversal(n);
  const Matrix ux = wl * wx.adjoint();
  const Matrix vy = wl * wy.adjoint();
  const Matrix vy_rev = wl * rev * wy.adjoint();
  const Matrix ux_rev = wl * rev * wx.adjoint();
  const std::vector<std::pair<Matrix, Matrix>> seeds{{id, id}, {ux, vy}, {ux, vy_rev}, {ux_rev, vy}};
  for (const auto& [u, v] : seeds) {
    if (attempts >= budget) return std::nullopt;
    if (auto hit = attempt(u, v)) return hit;
  }

  Rng rng(seed);
  while (attempts < budget) {
    const auto& [u0, v0] = seeds[attempts % seeds.size()];
    const double spread = 0.05 + rng.uniform();
    const Matrix u = u0 * near_identity_unitary(rng, n, spread);
    const Matrix v = v0 * near_identity_unitary(rng, n, spread);
    if (auto hit = attempt(u, v)) return hit;
  }
  return std::nullopt;
}

}  // namespace normetry
