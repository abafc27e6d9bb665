#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normetry/checks.hpp"
#include "normetry/rand.hpp"

namespace normetry {

inline constexpr const char* kToolVersion = "normetry 0.1.0";

enum class MutationKind { SwapFunctionClass, DropVanishing, DropNormality, DropExpansive };
enum class Expectation { MustViolate, Exploratory };

std::string to_string(MutationKind k);
std::string to_string(Expectation e);
MutationKind parse_mutation_kind(const std::string& s);

/// A broken hypothesis applied to one checker.
struct Mutation {
  CheckId target;
  MutationKind kind;
  Expectation expectation;
};

/// Supported pairs:
///   thm1.1 + swap-function-class   (convex f)          must violate
///   thm1.2 + drop-vanishing        (g(0) != 0)         must violate
///   thm2.4 + drop-expansive        (contraction Z)     must violate
///   thm3.1, thm3.2, prop3.4 + drop-normality           exploratory
/// Throws BadSpec for anything else.
Mutation make_mutation(CheckId target, MutationKind kind);

/// A self-contained record of one evaluated instance.
struct Certificate {
  CheckRequest request;
  std::optional<Mutation> mutation;
  std::uint64_t seed = 0;
  Verdict verdict;
  double margin = 0.0;
  std::string tool_version = kToolVersion;
};

/// Recompute the margin of a certificate from its stored inputs.
double replay_margin(const Certificate& cert);

/// Default hypothesis-class functions a checker is exercised with. Empty
/// for checkers that take no function.
std::vector<ScalarFn> catalog_for(CheckId id);

/// Seeded random instance for trial `trial` at dimension n. `functions`
/// overrides the catalog when non-empty.
CheckRequest make_trial(CheckId id, std::size_t n, std::uint64_t trial_seed, std::size_t trial,
                        const std::optional<Mutation>& mutation = std::nullopt,
                        const std::vector<ScalarFn>& functions = {});

/// Known analytic counterexample of a MustViolate mutation.
CheckRequest mutation_witness(const Mutation& m);

/// Seed for (check, dim, trial) under a root seed.
std::uint64_t trial_seed(std::uint64_t root_seed, CheckId id, std::size_t n, std::size_t trial);

struct CampaignConfig {
  CheckId check = CheckId::Thm1_1;
  std::optional<Mutation> mutation;
  std::size_t trials = 100;  ///< per dimension
  std::vector<std::size_t> dims{1, 2, 3, 4, 5, 6};
  std::uint64_t root_seed = 0;
  CheckOptions options;
  std::vector<ScalarFn> functions;
  /// Keep every evaluated instance in the report, not only violations.
  bool keep_all = false;
};

struct TrialRecord {
  std::size_t dim = 0;
  std::size_t trial = 0;
  std::string function;
  Certificate certificate;
};

struct CampaignReport {
  CheckId check = CheckId::Thm1_1;
  std::optional<Mutation> mutation;
  std::size_t trials_run = 0;
  std::vector<Certificate> violations;
  std::size_t inconsistencies = 0;  ///< passing verdicts with a failing cross-check
  double min_margin = 0.0;
  double wall_seconds = 0.0;
  std::vector<TrialRecord> records;  ///< only with keep_all

  /// Unmutated: no violation and no inconsistency. MustViolate: at least
  /// one violation. Exploratory: always.
  bool ok() const;
};

/// Trials run in a fixed order; aggregation is min/count only, so results
/// do not depend on the order anyway. MustViolate campaigns try the
/// analytic witness first.
CampaignReport run_campaign(const CampaignConfig& config);

/// Derivative-free descent on the scaled margin. Each step perturbs one
/// operand, projects it back onto its hypothesis class and keeps the
/// candidate only if the margin strictly decreases. The step anneals by
/// 0.9 after every 50 consecutive rejections.
std::pair<CheckRequest, double> minimize_margin(const CheckRequest& initial, std::size_t steps, double step_scale,
                                                std::uint64_t root_seed, const CheckOptions& opt = {});

enum class UnitaryStatement { Thm2_5, Prop3_5 };

struct UnitaryCertificate {
  Matrix u;
  Matrix v;
  double margin = 0.0;  ///< Loewner margin of the certified inequality
  std::size_t attempts = 0;
};

/// Search for unitaries U, V with L <= U X U* + V Y V* (tolerance 1e-8), where
///   Thm2_5:  L = f(A+B), X = f(A), Y = f(B)
///   Prop3_5: L = |S+T|,  X = Y = (|S|+|T|)/2.
/// Tries U = V = I, then eigenbasis alignments, then random rotations.
/// Returns nullopt on budget exhaustion, which refutes nothing.
std::optional<UnitaryCertificate> search_unitary_certificate(UnitaryStatement statement, const ScalarFn& f,
                                                             const HermitianMatrix& a, const HermitianMatrix& b,
                                                             std::size_t budget, std::uint64_t seed);

}  // namespace normetry
