#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "normetry/checks.hpp"
#include "normetry/errors.hpp"
#include "normetry/linalg.hpp"
#include "normetry/rand.hpp"
#include "normetry/witnesses.hpp"
#include "oracles.hpp"

using namespace normetry;

namespace {

Matrix gen(GenKind kind, std::size_t n, std::uint64_t seed, double scale = 1.0) {
  return generate({kind, n, seed, scale});
}

HermitianMatrix herm(GenKind kind, std::size_t n, std::uint64_t seed, double scale = 1.0) {
  return HermitianMatrix(gen(kind, n, seed, scale));
}

HermitianMatrix diag(std::initializer_list<double> d) {
  return HermitianMatrix::diagonal(std::span<const double>(d.begin(), d.size()));
}

const NormRecord& record(const Verdict& v, const std::string& label) {
  for (const auto& r : v.records)
    if (r.norm == label) return r;
  throw std::runtime_error("no record " + label);
}

void expect_zero_margins(const Verdict& v) {
  EXPECT_TRUE(v.pass) << v.check;
  for (const auto& r : v.records)
    if (!r.cross_check) EXPECT_NEAR(r.margin, 0.0, 1e-9) << v.check << " " << r.norm;
}

/// Singular values of f applied to a PSD matrix, computed without the
/// library's singular value path.
std::vector<double> f_values(const ScalarFn& f, const HermitianMatrix& a) {
  return oracle::singular_values_via_gram(spectral_apply(f, a).matrix());
}

double oracle_lambda_min(const Matrix& m) { return normetry::eigenvalues(HermitianMatrix(m)).back(); }

}  // namespace

// Witness table ----------------------------------------------------------------

TEST(Witnesses, EveryEntryHolds) {
  for (const auto& w : witness_table()) {
    const Verdict v = evaluate(w.request);
    EXPECT_TRUE(witness_holds(w, v)) << w.name << " min margin " << v.min_margin;
  }
}

TEST(Witnesses, CoverEveryChecker) {
  for (CheckId id : all_checks()) {
    std::size_t count = 0;
    for (const auto& w : witness_table())
      if (w.request.id == id) ++count;
    EXPECT_GE(count, 2u) << to_string(id);
  }
}

// Theorem 1.1 --------------------------------------------------------------------

TEST(Thm11, SqrtOnComplementaryProjections) {
  const std::vector<HermitianMatrix> ops{diag({1, 0}), diag({0, 1})};
  expect_zero_margins(check_thm_1_1(ScalarFn::sqrt(), ops));
}

TEST(Thm11, SqrtOnIdentities) {
  const std::vector<HermitianMatrix> ops{HermitianMatrix::identity(2), HermitianMatrix::identity(2)};
  const Verdict v = check_thm_1_1(ScalarFn::sqrt(), ops);
  EXPECT_TRUE(v.pass);
  const auto& r = record(v, "kyfan:1");
  EXPECT_NEAR(r.lhs, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.rhs, 2.0, 1e-14);
}

TEST(Thm11, Log1pThreeOperandsSeed42) {
  const auto f = ScalarFn::log1p();
  std::vector<HermitianMatrix> ops;
  for (std::uint64_t i = 0; i < 3; ++i) ops.push_back(herm(GenKind::PSD, 4, 42 + i, 2.0));
  const Verdict v = check_thm_1_1(f, ops);
  EXPECT_TRUE(v.pass);
  const auto lhs = f_values(f, ops[0] + ops[1] + ops[2]);
  const Matrix rhs = (spectral_apply(f, ops[0]) + spectral_apply(f, ops[1]) + spectral_apply(f, ops[2])).matrix();
  const auto pl = oracle::prefix_sums(lhs);
  const auto pr = oracle::prefix_sums(oracle::singular_values_via_gram(rhs));
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto& r = record(v, "kyfan:" + std::to_string(k));
    EXPECT_NEAR(r.lhs, pl[k - 1], 1e-9);
    EXPECT_NEAR(r.rhs, pr[k - 1], 1e-9);
    EXPECT_LE(pl[k - 1], pr[k - 1] + 1e-9);
  }
}

TEST(Thm11, RejectsConvexFunctionAndNonPsd) {
  const std::vector<HermitianMatrix> ops{HermitianMatrix::identity(2), HermitianMatrix::identity(2)};
  EXPECT_THROW(check_thm_1_1(ScalarFn::power_m(2), ops), ShapeValidationFailed);
  const std::vector<HermitianMatrix> bad{diag({1, -1}), HermitianMatrix::identity(2)};
  EXPECT_THROW(check_thm_1_1(ScalarFn::sqrt(), bad), DomainError);
  const std::vector<HermitianMatrix> single{HermitianMatrix::identity(2)};
  EXPECT_THROW(check_thm_1_1(ScalarFn::sqrt(), single), BadSpec);
}

// Theorem 1.2 --------------------------------------------------------------------

TEST(Thm12, SquareOnComplementaryProjections) {
  expect_zero_margins(check_thm_1_2(ScalarFn::power_m(2), diag({1, 0}), diag({0, 1})));
}

TEST(Thm12, SquareOnIdentities) {
  const auto i2 = HermitianMatrix::identity(2);
  const Verdict v = check_thm_1_2(ScalarFn::power_m(2), i2, i2);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(record(v, "kyfan:1").lhs, 2.0, 1e-14);
  EXPECT_NEAR(record(v, "kyfan:1").rhs, 4.0, 1e-14);
}

TEST(Thm12, AngleSeed9) {
  const auto g = ScalarFn::angle(1.0);
  const auto a = herm(GenKind::PSD, 4, 9, 3.0);
  const auto b = herm(GenKind::PSD, 4, 10, 2.0);
  EXPECT_TRUE(check_thm_1_2(g, a, b).pass);
  const Matrix lhs = (spectral_apply(g, a) + spectral_apply(g, b)).matrix();
  EXPECT_TRUE(oracle::prefix_dominated(oracle::singular_values_via_gram(lhs), f_values(g, a + b), 1e-9));
}

TEST(Thm12, PowerMatchesDirectBhatiaKittaneh) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const unsigned m = 1 + seed % 4;
    const auto a = herm(GenKind::PSD, 3, 2 * seed);
    const auto b = herm(GenKind::PSD, 3, 2 * seed + 1);
    const Verdict v = check_thm_1_2(ScalarFn::power_m(m), a, b);
    const Matrix lhs = oracle::naive_power(a.matrix(), m) + oracle::naive_power(b.matrix(), m);
    const Matrix rhs = oracle::naive_power((a + b).matrix(), m);
    for (const auto& r : v.records) {
      const NormSpec spec = NormSpec::parse(r.norm);
      EXPECT_NEAR(r.lhs, norm(lhs, spec), 1e-10 * std::max(1.0, r.lhs)) << r.norm;
      EXPECT_NEAR(r.rhs, norm(rhs, spec), 1e-10 * std::max(1.0, r.rhs)) << r.norm;
    }
  }
}

TEST(Thm12, SmoothedAngleCorollary) {
  // h_r is convex, vanishes at 0 and has an operator concave inverse.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto h = ScalarFn::smoothed(1.0, 1e-2);
    const Verdict v = check_thm_1_2(h, herm(GenKind::PSD, 4, 3 * seed, 3.0), herm(GenKind::PSD, 4, 3 * seed + 1, 2.0));
    EXPECT_TRUE(v.pass) << seed;
    EXPECT_TRUE(v.consistent);
  }
}

TEST(Thm12, RejectsNonVanishing) {
  const auto i2 = HermitianMatrix::identity(2);
  EXPECT_THROW(check_thm_1_2(ScalarFn::affine(1.0, 1.0), i2, i2), ShapeValidationFailed);
}

// Davis-Hansen -------------------------------------------------------------------

TEST(DavisHansen, IdentityContraction) {
  expect_zero_margins(check_davis_hansen(ScalarFn::sqrt(), herm(GenKind::PSD, 3, 1), Matrix::identity(3)));
}

TEST(DavisHansen, LinearFunction) {
  expect_zero_margins(check_davis_hansen(ScalarFn::power(1.0), herm(GenKind::PSD, 3, 1), gen(GenKind::Contraction, 3, 2)));
}

TEST(DavisHansen, SqrtSeed13) {
  const auto f = ScalarFn::sqrt();
  const auto a = herm(GenKind::PSD, 4, 13, 2.0);
  const Matrix z = gen(GenKind::Contraction, 4, 14);
  const Verdict v = check_davis_hansen(f, a, z);
  EXPECT_TRUE(v.pass);
  const Matrix lhs = oracle::multiply(oracle::multiply(oracle::adjoint(z), spectral_apply(f, a).matrix()), z);
  const Matrix rhs = spectral_apply(f, congruence(z, a)).matrix();
  const double lm = oracle_lambda_min(rhs - lhs);
  EXPECT_GE(lm, -1e-9);
  EXPECT_NEAR(record(v, "loewner").rhs, lm, 1e-10);
}

TEST(DavisHansen, ProjectionCompression) {
  // Davis: Z an orthogonal projection.
  const auto a = herm(GenKind::PSD, 4, 5, 3.0);
  const Matrix p = Matrix::diagonal(std::vector<double>{1, 1, 0, 0});
  EXPECT_TRUE(check_davis_hansen(ScalarFn::log1p(), a, p).pass);
}

TEST(DavisHansen, Errors) {
  const auto a = herm(GenKind::PSD, 2, 5);
  EXPECT_THROW(check_davis_hansen(ScalarFn::sqrt(), a, 2.0 * Matrix::identity(2)), NotAContraction);
  EXPECT_THROW(check_davis_hansen(ScalarFn::angle(1.0), a, Matrix::identity(2)), ShapeValidationFailed);
}

// Pinching inequality ------------------------------------------------------------

TEST(Pinching, SqrtOnIdentities) {
  const auto i2 = HermitianMatrix::identity(2);
  const Verdict v = check_pinching_eq2(ScalarFn::sqrt(), i2, i2);
  EXPECT_TRUE(v.pass);
  // 2I - sqrt(2) I
  EXPECT_NEAR(record(v, "loewner").rhs, 2.0 - std::sqrt(2.0), 1e-14);
}

TEST(Pinching, LinearIsEquality) {
  expect_zero_margins(check_pinching_eq2(ScalarFn::power(1.0), herm(GenKind::PD, 3, 1), herm(GenKind::PD, 3, 2)));
}

TEST(Pinching, SqrtSeed21) {
  const auto f = ScalarFn::sqrt();
  const auto a = herm(GenKind::PD, 3, 21, 2.0);
  const auto b = herm(GenKind::PD, 3, 22, 1.0);
  const Verdict v = check_pinching_eq2(f, a, b);
  EXPECT_TRUE(v.pass);
  const Matrix phi = spectral_apply([](double t) { return 1.0 / std::sqrt(t); }, a + b, FnDomain::Positive).matrix();
  const Matrix ra = spectral_apply(f, a).matrix();
  const Matrix rb = spectral_apply(f, b).matrix();
  const Matrix lhs = oracle::multiply(oracle::multiply(ra, phi), ra) + oracle::multiply(oracle::multiply(rb, phi), rb);
  EXPECT_NEAR(record(v, "loewner").rhs, oracle_lambda_min((ra + rb) - lhs), 1e-10);
}

TEST(Pinching, RequiresPositiveDefinite) {
  EXPECT_THROW(check_pinching_eq2(ScalarFn::sqrt(), diag({1, 0}), diag({1, 1})), NotPositiveDefinite);
}

// Proposition 2.1 ----------------------------------------------------------------

TEST(Prop21, InverseRootEquality) {
  expect_zero_margins(check_prop_2_1(ScalarFn::over_t(ScalarFn::sqrt()), diag({3, 1}), diag({1, 3})));
  const Verdict v = check_prop_2_1(ScalarFn::over_t(ScalarFn::sqrt()), diag({3, 1}), diag({1, 3}));
  EXPECT_NEAR(record(v, "kyfan:1").lhs, 2.0, 1e-14);
}

TEST(Prop21, ConstantIsEquality) {
  expect_zero_margins(check_prop_2_1(ScalarFn::affine(0.0, 1.0), herm(GenKind::PSD, 3, 4), herm(GenKind::PSD, 3, 5)));
}

TEST(Prop21, InverseRootSeed2) {
  const auto g = ScalarFn::over_t(ScalarFn::sqrt());
  const auto a = herm(GenKind::PD, 4, 2, 2.0);
  const auto b = herm(GenKind::PD, 4, 3, 1.0);
  EXPECT_TRUE(check_prop_2_1(g, a, b).pass);
  // (A+B) g(A+B) = sqrt(A+B).
  const auto lhs = f_values(ScalarFn::sqrt(), a + b);
  const Matrix ga = spectral_apply(g, a + b).matrix();
  const Matrix ra = spectral_apply(ScalarFn::sqrt(), a).matrix();
  const Matrix rb = spectral_apply(ScalarFn::sqrt(), b).matrix();
  const Matrix rhs = oracle::multiply(oracle::multiply(ra, ga), ra) + oracle::multiply(oracle::multiply(rb, ga), rb);
  EXPECT_TRUE(oracle::prefix_dominated(lhs, oracle::singular_values_via_gram(rhs), 1e-9));
}

TEST(Prop21, Errors) {
  EXPECT_THROW(check_prop_2_1(ScalarFn::sqrt(), diag({1, 1}), diag({1, 1})), ShapeValidationFailed);
  EXPECT_THROW(check_prop_2_1(ScalarFn::over_t(ScalarFn::sqrt()), diag({1, 0}), diag({1, 0})), NotPositiveDefinite);
}

// Theorem 2.4 --------------------------------------------------------------------

TEST(Thm24, ScaledIdentity) {
  const Verdict v = check_thm_2_4(ScalarFn::sqrt(), HermitianMatrix::identity(2), std::sqrt(2.0) * Matrix::identity(2));
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(record(v, "kyfan:1").lhs, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(record(v, "kyfan:1").rhs, 2.0, 1e-14);
}

TEST(Thm24, IdentityIsEquality) {
  expect_zero_margins(check_thm_2_4(ScalarFn::log1p(), herm(GenKind::PSD, 3, 8), Matrix::identity(3)));
}

TEST(Thm24, Log1pSeed17) {
  const auto f = ScalarFn::log1p();
  const auto a = herm(GenKind::PSD, 4, 17, 2.0);
  const Matrix w = gen(GenKind::PSD, 4, 18, 0.7);
  const Matrix z = Matrix::identity(4) + w;
  EXPECT_TRUE(is_expansive(z, 1e-9));
  EXPECT_TRUE(check_thm_2_4(f, a, z).pass);
  const Matrix rhs = oracle::multiply(oracle::multiply(oracle::adjoint(z), spectral_apply(f, a).matrix()), z);
  EXPECT_TRUE(oracle::prefix_dominated(f_values(f, congruence(z, a)), oracle::singular_values_via_gram(rhs), 1e-9));
}

TEST(Thm24, RequiresExpansive) {
  EXPECT_THROW(check_thm_2_4(ScalarFn::sqrt(), HermitianMatrix::identity(2), 0.5 * Matrix::identity(2)), NotExpansive);
}

// Eigenvalue sums ----------------------------------------------------------------

TEST(EigenSum, WeylForIdentityFunction) {
  const auto a = herm(GenKind::PSD, 3, 1), b = herm(GenKind::PSD, 3, 2);
  const Verdict v = check_eigen_sum(ScalarFn::power(1.0), a.matrix(), b.matrix(), 0, 0);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(v.records.front().lhs, lambda_max(a + b), 1e-12);
  EXPECT_NEAR(v.records.front().rhs, lambda_max(a) + lambda_max(b), 1e-12);
}

TEST(EigenSum, SqrtOnDisjointDiagonals) {
  const Verdict v = check_eigen_sum(ScalarFn::sqrt(), diag({4, 0}).matrix(), diag({0, 4}).matrix(), 0, 0);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(v.records.front().lhs, 2.0, 1e-14);
  EXPECT_NEAR(v.records.front().rhs, 4.0, 1e-14);
}

TEST(EigenSum, GeneralMatricesSeed31Sweep) {
  const auto f = ScalarFn::sqrt();
  const Matrix a = gen(GenKind::GeneralComplex, 4, 31, 2.0);
  const Matrix b = gen(GenKind::GeneralComplex, 4, 32, 1.0);
  const Verdict v = check_eigen_sum_sweep(f, a, b);
  EXPECT_TRUE(v.pass);
  auto mapped = [&](const Matrix& x) {
    auto s = oracle::singular_values_via_gram(x);
    for (auto& t : s) t = std::sqrt(t);
    return s;
  };
  const auto l = mapped(a + b), la = mapped(a), lb = mapped(b);
  std::size_t pairs = 0;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; j + k < 4; ++k) {
      ++pairs;
      EXPECT_LE(l[j + k], la[j] + lb[k] + 1e-9);
      const auto& r = record(v, "eig:j=" + std::to_string(j) + ",k=" + std::to_string(k));
      EXPECT_NEAR(r.lhs, l[j + k], 1e-9);
      EXPECT_NEAR(r.rhs, la[j] + lb[k], 1e-9);
    }
  EXPECT_EQ(v.records.size(), pairs);
}

TEST(EigenSum, IndexOutOfRange) {
  EXPECT_THROW(check_eigen_sum(ScalarFn::sqrt(), Matrix::identity(2), Matrix::identity(2), 1, 1), IndexOutOfRange);
}

// Cauchy-Schwarz step ------------------------------------------------------------

TEST(CsLemma, IdentityFactors) {
  const auto i2 = HermitianMatrix::identity(2);
  const HermitianMatrix z2(Matrix(2));
  expect_zero_margins(check_cs_lemma(i2, z2, i2, z2, Matrix::identity(2), Matrix::identity(2)));
}

TEST(CsLemma, SymmetricArguments) {
  const auto a1 = herm(GenKind::PSD, 3, 1), a2 = herm(GenKind::PSD, 3, 2);
  expect_zero_margins(check_cs_lemma(a1, a2, a1, a2, Matrix::identity(3), Matrix::identity(3)));
}

TEST(CsLemma, RandomSeed8) {
  const auto a1 = herm(GenKind::PSD, 3, 8), a2 = herm(GenKind::PSD, 3, 9, 2.0);
  const auto b1 = herm(GenKind::PSD, 3, 10), b2 = herm(GenKind::PSD, 3, 11, 0.5);
  const Matrix c1 = gen(GenKind::Contraction, 3, 12), c2 = gen(GenKind::Contraction, 3, 13);
  const Verdict v = check_cs_lemma(a1, a2, b1, b2, c1, c2);
  EXPECT_TRUE(v.pass);
  const Matrix lhs = oracle::multiply(oracle::multiply(a1.matrix(), c1), b1.matrix()) +
                     oracle::multiply(oracle::multiply(a2.matrix(), c2), b2.matrix());
  const Matrix ra = oracle::multiply(a1.matrix(), a1.matrix()) + oracle::multiply(a2.matrix(), a2.matrix());
  const Matrix rb = oracle::multiply(b1.matrix(), b1.matrix()) + oracle::multiply(b2.matrix(), b2.matrix());
  for (const auto& r : v.records) {
    const NormSpec s = NormSpec::parse(r.norm);
    EXPECT_NEAR(r.lhs, norm(lhs, s), 1e-10);
    EXPECT_NEAR(r.rhs, std::sqrt(norm(ra, s) * norm(rb, s)), 1e-10);
  }
}

TEST(CsLemma, RequiresContractions) {
  const auto i2 = HermitianMatrix::identity(2);
  EXPECT_THROW(check_cs_lemma(i2, i2, i2, i2, 3.0 * Matrix::identity(2), Matrix::identity(2)), NotAContraction);
}

// Inequality (4) -----------------------------------------------------------------

TEST(Ineq4, IdentitiesAreEquality) {
  const Verdict v = check_ineq_4(Matrix::identity(2), Matrix::identity(2));
  expect_zero_margins(v);
  EXPECT_NEAR(record(v, "kyfan:1").lhs, 2.0, 1e-14);
}

TEST(Ineq4, OppositeSummands) {
  const Matrix a = gen(GenKind::GeneralComplex, 3, 4);
  const Verdict v = check_ineq_4(a, -a);
  EXPECT_TRUE(v.pass);
  for (const auto& r : v.records) EXPECT_NEAR(r.lhs, 0.0, 1e-14);
}

TEST(Ineq4, RandomSeed14) {
  const Matrix a = gen(GenKind::GeneralComplex, 4, 14, 2.0);
  const Matrix b = gen(GenKind::GeneralComplex, 4, 15);
  const Verdict v = check_ineq_4(a, b);
  EXPECT_TRUE(v.pass);
  const Matrix abs_a = matrix_abs(a).matrix(), abs_b = matrix_abs(b).matrix();
  const Matrix abs_as = matrix_abs(a.adjoint()).matrix(), abs_bs = matrix_abs(b.adjoint()).matrix();
  for (const auto& r : v.records) {
    const NormSpec s = NormSpec::parse(r.norm);
    EXPECT_NEAR(r.rhs, std::sqrt(norm(abs_a + abs_b, s) * norm(abs_as + abs_bs, s)), 1e-10);
  }
}

// Theorem 3.1 --------------------------------------------------------------------

TEST(Thm31, ScalarOnes) {
  const Matrix one{{1.0}};
  const Verdict v = check_thm_3_1(one, one, one, one);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(record(v, "kyfan:1").lhs, 2.0, 1e-14);
  EXPECT_NEAR(record(v, "kyfan:1").rhs, 4.0, 1e-14);
}

TEST(Thm31, BlockDiagonalPsd) {
  const Matrix a = gen(GenKind::PSD, 3, 1), d = gen(GenKind::PSD, 3, 2);
  EXPECT_TRUE(check_thm_3_1(a, Matrix(3), Matrix(3), d).pass);
}

TEST(Thm31, NormalSeed6) {
  std::vector<Matrix> blocks;
  for (std::uint64_t i = 0; i < 4; ++i) blocks.push_back(gen(GenKind::Normal, 3, 6 + i));
  const Verdict v = check_thm_3_1(blocks[0], blocks[1], blocks[2], blocks[3]);
  EXPECT_TRUE(v.pass);
  const Matrix lhs = block_2x2(blocks[0], blocks[1], blocks[2], blocks[3]);
  Matrix rhs(3);
  for (const auto& b : blocks) rhs += matrix_abs(b).matrix();
  EXPECT_TRUE(oracle::prefix_dominated(oracle::singular_values_via_gram(lhs), oracle::singular_values_via_gram(rhs), 1e-9));
}

TEST(Thm31, Errors) {
  const Matrix nil{{0.0, 1.0}, {0.0, 0.0}};
  const Matrix i2 = Matrix::identity(2);
  EXPECT_THROW(check_thm_3_1(nil, i2, i2, i2), NotNormal);
  EXPECT_THROW(check_thm_3_1(i2, i2, i2, Matrix::identity(3)), DimensionMismatch);
}

// Theorem 3.2 --------------------------------------------------------------------

TEST(Thm32, ScalarOnesBoundTwo) {
  const Matrix one{{1.0}};
  const Verdict v = check_thm_3_2(one, one, one, one);
  expect_zero_margins(v);
  EXPECT_NEAR(v.records.front().rhs, 2.0, 1e-14);
}

TEST(Thm32, SingleBlock) {
  const Matrix a = gen(GenKind::Normal, 3, 3);
  expect_zero_margins(check_thm_3_2(a, Matrix(3), Matrix(3), Matrix(3)));
}

TEST(Thm32, NormalSeed23) {
  std::vector<Matrix> b;
  for (std::uint64_t i = 0; i < 4; ++i) b.push_back(gen(GenKind::Normal, 3, 23 + i));
  const Verdict v = check_thm_3_2(b[0], b[1], b[2], b[3]);
  EXPECT_TRUE(v.pass);
  auto abs_op = [](const Matrix& x, const Matrix& y) {
    return oracle::singular_values_via_gram(matrix_abs(x).matrix() + matrix_abs(y).matrix()).front();
  };
  const double bound = std::max({abs_op(b[0], b[1]), abs_op(b[2], b[3]), abs_op(b[0], b[2]), abs_op(b[1], b[3])});
  EXPECT_NEAR(v.records.front().rhs, bound, 1e-10);
  EXPECT_NEAR(v.records.front().lhs, oracle::singular_values_via_gram(block_2x2(b[0], b[1], b[2], b[3])).front(), 1e-9);
}

// Corollary 3.3 ------------------------------------------------------------------

TEST(Cor33, ZeroDiagonal) {
  const Matrix x = gen(GenKind::GeneralComplex, 3, 2);
  const HermitianMatrix z(Matrix(3));
  const Verdict v = check_cor_3_3(z, z, x);
  expect_zero_margins(v);
  EXPECT_NEAR(record(v, "operator").lhs, operator_norm(x), 1e-12);
}

TEST(Cor33, ZeroOffDiagonal) {
  const auto a = herm(GenKind::Hermitian, 3, 1), b = herm(GenKind::Hermitian, 3, 2, 0.5);
  const Verdict v = check_cor_3_3(a, b, Matrix(3));
  expect_zero_margins(v);
  EXPECT_NEAR(record(v, "operator").lhs, std::max(operator_norm(a), operator_norm(b)), 1e-12);
}

TEST(Cor33, RandomSeed27WithEmbedding) {
  const auto a = herm(GenKind::Hermitian, 3, 27), b = herm(GenKind::Hermitian, 3, 28);
  const Matrix x = gen(GenKind::GeneralComplex, 3, 29);
  const Verdict v = check_cor_3_3(a, b, x);
  EXPECT_TRUE(v.pass);
  const auto& emb = record(v, "embedded:operator");
  EXPECT_GE(emb.margin, -1e-9);
  const Matrix full = block_2x2(a.matrix(), x.adjoint(), x, b.matrix());
  EXPECT_NEAR(record(v, "operator").lhs, oracle::singular_values_via_gram(full).front(), 1e-9);
}

// Proposition 3.4 ----------------------------------------------------------------

TEST(Prop34, OppositeIdentities) {
  const Verdict v = check_prop_3_4(Matrix::identity(2), -Matrix::identity(2));
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(record(v, "kyfan:1").lhs, 0.0, 1e-15);
  EXPECT_NEAR(record(v, "kyfan:1").rhs, 2.0, 1e-15);
}

TEST(Prop34, EqualUnitaries) {
  const Matrix u = gen(GenKind::Unitary, 3, 7);
  expect_zero_margins(check_prop_3_4(u, u));
}

TEST(Prop34, NormalSeed35) {
  const Matrix a = gen(GenKind::Normal, 4, 35), b = gen(GenKind::Normal, 4, 36, 2.0);
  EXPECT_TRUE(check_prop_3_4(a, b).pass);
  EXPECT_TRUE(oracle::prefix_dominated(oracle::singular_values_via_gram(a + b),
                                       oracle::singular_values_via_gram(matrix_abs(a).matrix() + matrix_abs(b).matrix()),
                                       1e-9));
  const Matrix nil{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_THROW(check_prop_3_4(nil, Matrix::identity(2)), NotNormal);
}

// Proposition 3.5 ----------------------------------------------------------------

TEST(Prop35, EqualReflections) {
  const Verdict v = check_prop_3_5_eigen(diag({1, -1}), diag({1, -1}), 0, 0);
  expect_zero_margins(v);
  EXPECT_NEAR(v.records.front().lhs, 2.0, 1e-14);
}

TEST(Prop35, ZeroSecondOperand) {
  expect_zero_margins(check_prop_3_5_eigen(herm(GenKind::Hermitian, 3, 1), HermitianMatrix(Matrix(3)), 0, 0));
}

TEST(Prop35, Seed4Sweep) {
  const auto s = herm(GenKind::Hermitian, 4, 4), t = herm(GenKind::Hermitian, 4, 5);
  const Verdict v = check_prop_3_5_eigen_sweep(s, t);
  EXPECT_TRUE(v.pass);
  const auto l = oracle::singular_values_via_gram((s + t).matrix());
  auto m = normetry::eigenvalues(HermitianMatrix(matrix_abs(s.matrix()).matrix() + matrix_abs(t.matrix()).matrix()));
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; j + k < 4; ++k) EXPECT_LE(l[j + k], 0.5 * (m[j] + m[k]) + 1e-9);
  EXPECT_EQ(v.records.size(), 10u);
  EXPECT_THROW(check_prop_3_5_eigen(s, t, 2, 2), IndexOutOfRange);
}

// Inequality (5) -----------------------------------------------------------------

TEST(Ineq5, RealPositiveZ) {
  expect_zero_margins(check_ineq_5(herm(GenKind::PSD, 3, 1), herm(GenKind::PSD, 3, 2), 0.6, 3));
}

TEST(Ineq5, MinusOneOnProjections) {
  const Verdict v = check_ineq_5(diag({1, 0}), diag({0, 1}), -1.0, 1);
  expect_zero_margins(v);
  EXPECT_NEAR(record(v, "kyfan:2").lhs, 2.0, 1e-15);
}

TEST(Ineq5, ImaginaryZCubeSeed44) {
  const auto a = herm(GenKind::PSD, 4, 44), b = herm(GenKind::PSD, 4, 45);
  const cplx z(0.0, 1.0);
  EXPECT_TRUE(check_ineq_5(a, b, z, 3).pass);
  const Matrix lhs = oracle::naive_power(a.matrix() + z * b.matrix(), 3);
  const Matrix rhs = oracle::naive_power(a.matrix() + b.matrix(), 3);
  EXPECT_TRUE(oracle::prefix_dominated(oracle::singular_values_via_gram(lhs), oracle::singular_values_via_gram(rhs), 1e-9));
  EXPECT_THROW(check_ineq_5(a, b, z, 0), BadSpec);
}

// Identity (6) -------------------------------------------------------------------

TEST(Identity6, WordExpansionConfirmsCorrectedForm) {
  // Runs on non-commuting pairs: every mixed word must cancel.
  for (unsigned m = 1; m <= 4; ++m)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Matrix a = gen(GenKind::PSD, 3, 2 * seed);
      const Matrix b = gen(GenKind::PSD, 3, 2 * seed + 1);
      const Matrix target = oracle::naive_power(a, m) + oracle::naive_power(b, m);
      EXPECT_LE(oracle::max_diff(oracle::power_sum_by_words(a, b, m), target), 1e-13) << m;
    }
}

TEST(Identity6, AveragedPowersVariantFails) {
  const Matrix a = gen(GenKind::PSD, 3, 1);
  const Matrix b = gen(GenKind::PSD, 3, 2);
  for (unsigned m = 2; m <= 4; ++m) {
    const Matrix target = oracle::naive_power(a, m) + oracle::naive_power(b, m);
    EXPECT_GT(oracle::max_diff(oracle::averaged_powers_variant(a, b, m), target), 1e-3) << m;
  }
}

TEST(Identity6, CheckerAgreesWithWordExpansion) {
  for (unsigned m = 1; m <= 4; ++m) {
    const Matrix a = gen(GenKind::PSD, 4, 10 + m), b = gen(GenKind::PSD, 4, 20 + m);
    EXPECT_LE(check_identity_6(a, b, m), 1e-12);
    const Matrix target = oracle::naive_power(a, m) + oracle::naive_power(b, m);
    EXPECT_LE(oracle::max_diff(oracle::power_sum_by_words(a, b, m), target), 1e-12);
  }
}

TEST(Identity6, SpecExamples) {
  const Matrix a = gen(GenKind::PSD, 3, 1), b = gen(GenKind::PSD, 3, 2);
  EXPECT_EQ(check_identity_6(a, b, 1), 0.0);
  EXPECT_LE(check_identity_6(gen(GenKind::GeneralComplex, 3, 3), gen(GenKind::GeneralComplex, 3, 4), 2), 1e-12);
  EXPECT_LE(check_identity_6(gen(GenKind::PSD, 4, 50), gen(GenKind::PSD, 4, 51), 5), 1e-10);
  EXPECT_THROW(check_identity_6(a, b, 0), BadSpec);
  const Verdict v = identity_6_verdict(a, b, 3);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.tolerance, kIdentityTol);
}

// Dispatch -----------------------------------------------------------------------

TEST(Dispatch, IdRoundTripAndUnknown) {
  EXPECT_EQ(all_checks().size(), 16u);
  for (CheckId id : all_checks()) EXPECT_EQ(parse_check_id(to_string(id)), id);
  EXPECT_THROW(parse_check_id("nosuch"), UnknownCheck);
}

TEST(Dispatch, EvaluateValidatesRequest) {
  CheckRequest r;
  r.id = CheckId::Thm1_2;
  r.operands = {Matrix::identity(2), Matrix::identity(2)};
  EXPECT_THROW(evaluate(r), BadSpec);  // no function
  r.function = ScalarFn::power_m(2);
  r.operands.pop_back();
  EXPECT_THROW(evaluate(r), BadSpec);  // one operand
}

TEST(Dispatch, FingerprintHashSensitivity) {
  CheckRequest r;
  r.id = CheckId::Ineq4;
  r.operands = {gen(GenKind::GeneralComplex, 2, 1), gen(GenKind::GeneralComplex, 2, 2)};
  const auto h = fingerprint_hash(r);
  EXPECT_EQ(h, fingerprint_hash(r));
  EXPECT_EQ(evaluate(r).fingerprint.hash, h);
  CheckRequest s = r;
  s.operands[0](0, 0) += 1e-15;
  EXPECT_NE(fingerprint_hash(s), h);
  s = r;
  s.m = 2;
  EXPECT_NE(fingerprint_hash(s), h);
}

TEST(Dispatch, ToleranceOverride) {
  CheckRequest r;
  r.id = CheckId::Identity6;
  r.operands = {gen(GenKind::PSD, 3, 1), gen(GenKind::PSD, 3, 2)};
  r.m = 2;
  r.tolerance = 1e-12;
  const Verdict v = evaluate(r);
  EXPECT_EQ(v.tolerance, 1e-12);
  EXPECT_TRUE(v.pass);
}

TEST(Dispatch, SkippingHypothesesRunsBrokenInputs) {
  CheckOptions loose;
  loose.enforce_hypotheses = false;
  const std::vector<HermitianMatrix> ops{HermitianMatrix::identity(2), HermitianMatrix::identity(2)};
  const Verdict v = check_thm_1_1(ScalarFn::power_m(2), ops, loose);
  EXPECT_FALSE(v.pass);
  EXPECT_NEAR(v.min_margin, (2.0 - 4.0) / 2.0, 1e-14);
}
