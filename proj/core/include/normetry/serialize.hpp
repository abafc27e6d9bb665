#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "normetry/checks.hpp"
#include "normetry/falsify.hpp"
#include "normetry/matrix.hpp"
#include "normetry/scalarfn.hpp"
#include "normetry/verdict.hpp"

namespace normetry {

using json = nlohmann::json;

/// {"n": n, "re": [row-major], "im": [row-major]}. Doubles are written in
/// shortest round-trip form, so parsing restores every bit.
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"kind": "sqrt"}, {"kind": "power", "s": 0.5}, {"kind": "pwl",
/// "breakpoints": [[t, v], ...]}, {"kind": "cone", "weights": [...],
/// "members": [...]}, ...
json to_json(const ScalarFn& f);
ScalarFn scalar_fn_from_json(const json& j);
/// Breakpoints as [[t, v], ...] or [{"t": t, "value": v}, ...]; t_0 = 0.
ScalarFn pwl_from_json(const json& j);

json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);
json to_json(const CheckRequest& r);
CheckRequest request_from_json(const json& j);
json to_json(const Mutation& m);
Mutation mutation_from_json(const json& j);
json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

std::string hex64(std::uint64_t v);

}  // namespace normetry
