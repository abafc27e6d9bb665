#include "normetry/witnesses.hpp"

#include <cmath>

namespace normetry {
namespace {

Matrix diag(std::initializer_list<double> d) { return Matrix::diagonal(std::span<const double>(d.begin(), d.size())); }

Witness make(std::string name, CheckId id, std::vector<Matrix> ops, std::optional<ScalarFn> f, bool equality) {
  CheckRequest r;
  r.id = id;
  r.operands = std::move(ops);
  r.function = std::move(f);
  return {std::move(name), std::move(r), equality};
}

Witness with_jk(Witness w, std::size_t j, std::size_t k) {
  w.request.j = j;
  w.request.k = k;
  return w;
}

Witness with_power(Witness w, unsigned m, cplx z = 0.0) {
  w.request.m = m;
  w.request.z = z;
  return w;
}

std::vector<Witness> build() {
  const Matrix i2 = Matrix::identity(2);
  const Matrix z2(2);
  const Matrix one{{1.0}};
  const Matrix e1 = diag({1, 0});
  const Matrix e2 = diag({0, 1});
  const Matrix pd_b{{1.0, 0.5}, {0.5, 1.0}};
  const Matrix contraction{{0.5, 0.2}, {0.1, 0.3}};
  const Matrix jordan{{1.0, 2.0}, {0.0, 1.0}};
  const Matrix rotation{{0.0, -1.0}, {1.0, 0.0}};
  const Matrix normal_a = Matrix::diagonal(std::vector<cplx>{{0.0, 2.0}, {-1.0, 0.0}});
  const auto sqrt = ScalarFn::sqrt();
  const auto square = ScalarFn::power_m(2);
  const auto identity = ScalarFn::power(1.0);

  std::vector<Witness> w;
  w.push_back(make("thm1.1 sqrt on complementary projections", CheckId::Thm1_1, {e1, e2}, sqrt, true));
  w.push_back(make("thm1.1 sqrt on A = B = I", CheckId::Thm1_1, {i2, i2}, sqrt, false));
  w.push_back(make("thm1.2 t^2 on complementary projections", CheckId::Thm1_2, {e1, e2}, square, true));
  w.push_back(make("thm1.2 t^2 on A = B = I", CheckId::Thm1_2, {i2, i2}, square, false));
  w.push_back(make("davis-hansen Z = I", CheckId::DavisHansen, {diag({2, 0.5}), i2}, sqrt, true));
  w.push_back(make("davis-hansen f = t", CheckId::DavisHansen, {diag({3, 1}), contraction}, identity, true));
  w.push_back(make("pinching sqrt on A = B = I", CheckId::Pinching, {i2, i2}, sqrt, false));
  w.push_back(make("pinching f = t", CheckId::Pinching, {diag({2, 1}), pd_b}, identity, true));
  w.push_back(make("prop2.1 g = 1/sqrt(t), A + B = 4I", CheckId::Prop2_1, {diag({3, 1}), diag({1, 3})},
                   ScalarFn::over_t(sqrt), true));
  w.push_back(make("prop2.1 g = 1", CheckId::Prop2_1, {diag({2, 1}), pd_b}, ScalarFn::affine(0.0, 1.0), true));
  w.push_back(make("thm2.4 Z = sqrt(2) I", CheckId::Thm2_4, {i2, std::sqrt(2.0) * i2}, sqrt, false));
  w.push_back(make("thm2.4 Z = I", CheckId::Thm2_4, {diag({3, 1}), i2}, sqrt, true));
  w.push_back(with_jk(make("eigen-sum Weyl, f = t", CheckId::EigenSum, {diag({2, 1}), diag({0.5, 3})}, identity,
                           false), 0, 0));
  w.push_back(with_jk(make("eigen-sum sqrt, diag(4,0) + diag(0,4)", CheckId::EigenSum, {diag({4, 0}), diag({0, 4})},
                           sqrt, false), 0, 0));
  w.push_back(make("cs-lemma identity factors", CheckId::CsLemma, {i2, z2, i2, z2, i2, i2}, std::nullopt, true));
  w.push_back(make("cs-lemma A = B, C = I", CheckId::CsLemma, {diag({1, 2}), pd_b, diag({1, 2}), pd_b, i2, i2},
                   std::nullopt, true));
  w.push_back(make("ineq4 A = B = I", CheckId::Ineq4, {i2, i2}, std::nullopt, true));
  w.push_back(make("ineq4 B = -A", CheckId::Ineq4, {jordan, -jordan}, std::nullopt, false));
  w.push_back(make("thm3.1 scalar ones", CheckId::Thm3_1, {one, one, one, one}, std::nullopt, false));
  w.push_back(make("thm3.1 block diagonal PSD", CheckId::Thm3_1, {diag({1, 2}), z2, z2, Matrix{{2.0, 1.0}, {1.0, 1.0}}},
                   std::nullopt, false));
  w.push_back(make("thm3.2 scalar ones", CheckId::Thm3_2, {one, one, one, one}, std::nullopt, true));
  w.push_back(make("thm3.2 single normal block", CheckId::Thm3_2, {normal_a, z2, z2, z2}, std::nullopt, true));
  w.push_back(make("cor3.3 A = B = 0", CheckId::Cor3_3, {z2, z2, jordan}, std::nullopt, true));
  w.push_back(make("cor3.3 X = 0", CheckId::Cor3_3, {diag({1, -3}), diag({2, 0.5}), z2}, std::nullopt, true));
  w.push_back(make("prop3.4 A = I, B = -I", CheckId::Prop3_4, {i2, -i2}, std::nullopt, false));
  w.push_back(make("prop3.4 A = B unitary", CheckId::Prop3_4, {rotation, rotation}, std::nullopt, true));
  w.push_back(with_jk(make("prop3.5 S = T = diag(1,-1)", CheckId::Prop3_5, {diag({1, -1}), diag({1, -1})},
                           std::nullopt, true), 0, 0));
  w.push_back(with_jk(make("prop3.5 T = 0", CheckId::Prop3_5, {diag({2, -0.5}), z2}, std::nullopt, true), 0, 0));
  w.push_back(with_power(make("ineq5 real positive z", CheckId::Ineq5, {diag({2, 1}), pd_b}, std::nullopt, true), 3,
                         0.7));
  w.push_back(with_power(make("ineq5 z = -1 on projections", CheckId::Ineq5, {e1, e2}, std::nullopt, true), 1, -1.0));
  w.push_back(with_power(make("identity6 m = 1", CheckId::Identity6, {diag({2, 1}), pd_b}, std::nullopt, true), 1));
  auto m2 = with_power(make("identity6 m = 2", CheckId::Identity6, {jordan, pd_b}, std::nullopt, true), 2);
  m2.request.tolerance = 1e-12;
  w.push_back(std::move(m2));
  return w;
}

}  // namespace

const std::vector<Witness>& witness_table() {
  static const std::vector<Witness> table = build();
  return table;
}

bool witness_holds(const Witness& w, const Verdict& v, double tol) {
  if (!v.pass) return false;
  return !w.equality || std::abs(v.min_margin) <= tol;
}

}  // namespace normetry
