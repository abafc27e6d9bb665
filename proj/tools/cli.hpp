#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "normetry/checks.hpp"
#include "normetry/falsify.hpp"
#include "normetry/rand.hpp"

namespace normetry::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

enum class Format { Json, Csv };

struct RunConfig {
  std::vector<CheckId> checks = all_checks();
  std::vector<std::size_t> dims{1, 2, 3, 4, 5, 6};
  std::size_t trials = 500;  ///< per dimension
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::vector<double> schatten = kSchattenGrid;
  /// Replaces the catalog for every check whose class they satisfy.
  std::vector<ScalarFn> functions;
  std::string output;  ///< empty: stdout
  Format format = Format::Json;
};

struct FalsifyConfig {
  RunConfig run;
  std::optional<MutationKind> mutation;
  std::string certificate_dir;  ///< empty: no certificate files
  std::size_t max_certificates = 16;
};

struct GenConfig {
  GenSpec spec;
  std::string output;
};

/// Default seed: NORMETRY_SEED when set and numeric, else 0.
std::uint64_t default_seed();

/// "sqrt", "power:0.5", "smoothed:1:0.01", "over-t:sqrt", "pwl:file.json", ...
/// Throws BadSpec or ParseError.
ScalarFn parse_function(const std::string& spec);
/// "all" or a comma list. Throws UnknownCheck.
std::vector<CheckId> parse_checks(const std::string& list);
/// "1,2,4" or "1..6". Throws BadSpec.
std::vector<std::size_t> parse_dims(const std::string& list);

/// Throws BadSpec when a check that takes a function has none of the
/// supplied ones in its class.
void validate(const RunConfig& cfg);

struct Outcome {
  nlohmann::json report;
  int exit_code = kOk;
};

/// Report object: {"header", "config", "witnesses", "verdicts", "summary",
/// "pass"}. Only "header" depends on the clock.
Outcome run_verify(const RunConfig& cfg);
Outcome run_falsify(const FalsifyConfig& cfg);

/// Per-check aggregate rows of a verify or falsify report.
std::string csv_summary(const nlohmann::json& report);

int cmd_verify(const RunConfig& cfg, std::ostream& err);
int cmd_falsify(const FalsifyConfig& cfg, std::ostream& err);
int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_gen(const GenConfig& cfg, std::ostream& err);

/// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace normetry::cli
