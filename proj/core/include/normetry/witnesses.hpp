#pragma once

#include <string>
#include <vector>

#include "normetry/checks.hpp"

namespace normetry {

/// A hand-checkable instance with a known outcome.
struct Witness {
  std::string name;
  CheckRequest request;
  /// Both sides agree exactly, so |min margin| must stay within the
  /// tolerance: a checker reporting slack here is wrong.
  bool equality = false;
};

/// Fixed table covering every checker.
const std::vector<Witness>& witness_table();

/// The verdict passes and, for equality witnesses, |min_margin| <= tol.
bool witness_holds(const Witness& w, const Verdict& v, double tol = kDefaultTol);

}  // namespace normetry
