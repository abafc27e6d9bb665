#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace normetry {

/// Global pass criterion: scaled margin >= -kDefaultTol.
inline constexpr double kDefaultTol = 1e-9;

/// (rhs - lhs) / max(1, rhs). Non-negative when lhs <= rhs.
double scaled_margin(double lhs, double rhs);

/// One compared quantity inside a verdict. `norm` is a norm label
/// ("kyfan:2", "schatten:1.5", "operator", ...) or a scalar tag such as
/// "loewner" or "eig:j=0,k=1".
struct NormRecord {
  std::string norm;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  /// Redundant comparison implied by the primary ones; it does not decide
  /// the verdict but must agree with it.
  bool cross_check = false;
};

/// Seed of the generator that produced the inputs plus a hash of the
/// inputs themselves, so a replay can confirm it rebuilt the same data.
struct Fingerprint {
  std::uint64_t seed = 0;
  std::uint64_t hash = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct Verdict {
  std::string check;
  std::vector<NormRecord> records;
  bool pass = false;
  double tolerance = kDefaultTol;
  double min_margin = std::numeric_limits<double>::infinity();
  /// False if pass holds but some cross-check record fails.
  bool consistent = true;
  Fingerprint fingerprint;

  /// Recompute pass, min_margin and consistent from the records.
  void finalize();
};

}  // namespace normetry
