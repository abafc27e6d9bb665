#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normetry/matrix.hpp"
#include "normetry/norms.hpp"
#include "normetry/scalarfn.hpp"
#include "normetry/verdict.hpp"

namespace normetry {

/// Tolerance used for hypothesis predicates (PSD, normal, contraction, ...).
inline constexpr double kHypothesisTol = 1e-9;
/// Pass threshold of the power-sum identity residual.
inline constexpr double kIdentityTol = 1e-10;

struct CheckOptions {
  double tol = kDefaultTol;
  /// When false the hypothesis guards are skipped. Falsification uses this
  /// to feed deliberately broken inputs through the same code path.
  bool enforce_hypotheses = true;
  std::vector<double> schatten = kSchattenGrid;
};

// Subadditivity / superadditivity -------------------------------------------

/// f(A_1 + ... + A_m) versus f(A_1) + ... + f(A_m), all symmetric norms.
Verdict check_thm_1_1(const ScalarFn& f, std::span<const HermitianMatrix> operands,
                      const CheckOptions& opt = {});
/// g(A) + g(B) versus g(A + B) for convex g with g(0) = 0.
Verdict check_thm_1_2(const ScalarFn& g, const HermitianMatrix& a, const HermitianMatrix& b,
                      const CheckOptions& opt = {});

// Operator concave devices ---------------------------------------------------

/// Z* f(A) Z <= f(Z* A Z) in Loewner order, Z a contraction.
Verdict check_davis_hansen(const ScalarFn& f, const HermitianMatrix& a, const Matrix& z,
                           const CheckOptions& opt = {});
/// A^{1/2} phi(A+B) A^{1/2} + B^{1/2} phi(A+B) B^{1/2} <= f(A) + f(B),
/// phi(t) = f(t)/t, for positive definite A, B.
Verdict check_pinching_eq2(const ScalarFn& f, const HermitianMatrix& a, const HermitianMatrix& b,
                           const CheckOptions& opt = {});
/// |(A+B) g(A+B)| <= |A^{1/2} g(A+B) A^{1/2} + B^{1/2} g(A+B) B^{1/2}|.
Verdict check_prop_2_1(const ScalarFn& g, const HermitianMatrix& a, const HermitianMatrix& b,
                       const CheckOptions& opt = {});
/// |f(Z* A Z)| <= |Z* f(A) Z| for expansive Z.
Verdict check_thm_2_4(const ScalarFn& f, const HermitianMatrix& a, const Matrix& z,
                      const CheckOptions& opt = {});

// Eigenvalue consequences ----------------------------------------------------

/// lambda_{j+k+1} f(A+B) <= lambda_{j+1} f(A) + lambda_{k+1} f(B) with 0-based
/// j, k. PSD inputs are used directly; any other pair is replaced by
/// |A+B|, |A|, |B|.
Verdict check_eigen_sum(const ScalarFn& f, const Matrix& a, const Matrix& b, std::size_t j,
                        std::size_t k, const CheckOptions& opt = {});
/// Every admissible (j, k) in one verdict.
Verdict check_eigen_sum_sweep(const ScalarFn& f, const Matrix& a, const Matrix& b,
                              const CheckOptions& opt = {});
/// lambda_{j+k+1}|S+T| <= (lambda_{j+1}(|S|+|T|) + lambda_{k+1}(|S|+|T|)) / 2.
Verdict check_prop_3_5_eigen(const HermitianMatrix& s, const HermitianMatrix& t, std::size_t j,
                             std::size_t k, const CheckOptions& opt = {});
Verdict check_prop_3_5_eigen_sweep(const HermitianMatrix& s, const HermitianMatrix& t,
                                   const CheckOptions& opt = {});

// Triangle-type and block inequalities ---------------------------------------

/// |A1 C1 B1 + A2 C2 B2| <= |A1^2 + A2^2|^{1/2} |B1^2 + B2^2|^{1/2} per norm.
Verdict check_cs_lemma(const HermitianMatrix& a1, const HermitianMatrix& a2, const HermitianMatrix& b1,
                       const HermitianMatrix& b2, const Matrix& c1, const Matrix& c2,
                       const CheckOptions& opt = {});
/// |A+B| <= ||A|+|B||^{1/2} ||A*|+|B*||^{1/2} per norm.
Verdict check_ineq_4(const Matrix& a, const Matrix& b, const CheckOptions& opt = {});
/// |[[A, B], [C, D]]| <= ||A|+|B|+|C|+|D|| for normal blocks, all norms.
Verdict check_thm_3_1(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d,
                      const CheckOptions& opt = {});
/// Operator norm of the block matrix against the largest of the four
/// row/column sums of absolute values.
Verdict check_thm_3_2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d,
                      const CheckOptions& opt = {});
/// Operator norm of [[A, X*], [X, B]] against max(||A|+|X||, ||B|+|X*||). Also
/// replays the 4x4 block embedding through check_thm_3_2; its record is
/// tagged "embedded:operator".
Verdict check_cor_3_3(const HermitianMatrix& a, const HermitianMatrix& b, const Matrix& x,
                      const CheckOptions& opt = {});
/// |A+B| <= ||A|+|B|| for normal A, B, all norms.
Verdict check_prop_3_4(const Matrix& a, const Matrix& b, const CheckOptions& opt = {});
/// |(A + zB)^m| <= |(A + |z|B)^m| for PSD A, B, all norms.
Verdict check_ineq_5(const HermitianMatrix& a, const HermitianMatrix& b, cplx z, unsigned m,
                     const CheckOptions& opt = {});

/// Relative operator-norm residual of
/// A^m + B^m = (1/m) sum_{j<m} (A + w^j B)^m, w = exp(2 pi i / m).
double check_identity_6(const Matrix& a, const Matrix& b, unsigned m);
/// Verdict form of the residual, tolerance kIdentityTol.
Verdict identity_6_verdict(const Matrix& a, const Matrix& b, unsigned m);

// Uniform dispatch -----------------------------------------------------------

enum class CheckId {
  Thm1_1, Thm1_2, DavisHansen, Pinching, Prop2_1, Thm2_4, EigenSum, CsLemma,
  Ineq4, Thm3_1, Thm3_2, Cor3_3, Prop3_4, Prop3_5, Ineq5, Identity6,
};

const std::vector<CheckId>& all_checks();
std::string to_string(CheckId id);
/// Throws UnknownCheck.
CheckId parse_check_id(const std::string& s);
/// Hypothesis class of the scalar function a check takes; nullopt for
/// checks without one.
std::optional<FnClass> required_class(CheckId id);

/// Inputs of one checker call. Operand order per check:
///   thm1.1: A_1..A_m        thm1.2, pinching, prop2.1, ineq4, prop3.4, ineq5,
///   identity6, eigen-sum: A, B          davis-hansen, thm2.4: A, Z
///   cs-lemma: A1, A2, B1, B2, C1, C2    thm3.1, thm3.2: A, B, C, D
///   cor3.3: A, B, X                     prop3.5: S, T
/// Hermitian roles are symmetrized on entry. Missing j/k on eigen-sum and
/// prop3.5 means "sweep every admissible pair".
struct CheckRequest {
  CheckId id = CheckId::Thm1_1;
  std::vector<Matrix> operands;
  std::optional<ScalarFn> function;
  std::optional<std::size_t> j;
  std::optional<std::size_t> k;
  unsigned m = 1;
  cplx z = 0.0;
  std::optional<double> tolerance;
};

/// FNV-1a over every field of the request.
std::uint64_t fingerprint_hash(const CheckRequest& req);

/// Run the checker named by req.id. The verdict's fingerprint hash is set;
/// its seed is left for the caller.
Verdict evaluate(const CheckRequest& req, CheckOptions opt = {});

}  // namespace normetry
