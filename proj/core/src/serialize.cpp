#include "normetry/serialize.hpp"

#include <cstdio>
#include <limits>

#include "normetry/errors.hpp"

namespace normetry {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (const cplx& z : m.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"n", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    const auto n = j.at("n").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (n < 1 || re.size() != n * n || im.size() != n * n) throw ParseError("matrix: entry count does not match n");
    std::vector<cplx> entries(n * n);
    for (std::size_t i = 0; i < n * n; ++i) entries[i] = {re.at(i).get<double>(), im.at(i).get<double>()};
    return Matrix(n, std::move(entries));
  });
}

json to_json(const ScalarFn& f) {
  return std::visit(overloaded{
      [](const fn::Sqrt&) { return json{{"kind", "sqrt"}}; },
      [](const fn::Power& p) { return json{{"kind", "power"}, {"s", p.s}}; },
      [](const fn::Log1p&) { return json{{"kind", "log1p"}}; },
      [](const fn::AffinePlus& p) { return json{{"kind", "affine"}, {"slope", p.slope}, {"offset", p.offset}}; },
      [](const fn::Saturating& p) { return json{{"kind", "saturating"}, {"c", p.c}}; },
      [](const fn::Angle& p) { return json{{"kind", "angle"}, {"a", p.a}}; },
      [](const fn::Smoothed& p) { return json{{"kind", "smoothed"}, {"a", p.a}, {"r", p.r}}; },
      [](const fn::SmoothedInverse& p) { return json{{"kind", "smoothed-inverse"}, {"a", p.a}, {"r", p.r}}; },
      [](const fn::PowerM& p) { return json{{"kind", "power-m"}, {"m", p.m}}; },
      [](const fn::PwlConcave& p) {
        json bp = json::array();
        for (const auto& [t, v] : p.breakpoints) bp.push_back({t, v});
        return json{{"kind", "pwl"}, {"breakpoints", std::move(bp)}};
      },
      [](const fn::OverT& p) { return json{{"kind", "over-t"}, {"inner", to_json(*p.inner)}}; },
      [](const fn::ConeCombination& c) {
        json members = json::array();
        for (const auto& m : c.members) members.push_back(to_json(m));
        return json{{"kind", "cone"}, {"weights", c.weights}, {"members", std::move(members)}};
      },
  }, f.descriptor());
}

ScalarFn pwl_from_json(const json& j) {
  return guarded("pwl breakpoints", [&] {
    const json& arr = j.is_object() ? j.at("breakpoints") : j;
    std::vector<std::pair<double, double>> bp;
    for (const auto& e : arr) {
      if (e.is_array()) {
        if (e.size() != 2) throw ParseError("pwl breakpoint must be a [t, value] pair");
        bp.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      } else {
        bp.emplace_back(e.at("t").get<double>(), e.at("value").get<double>());
      }
    }
    return ScalarFn::pwl(std::move(bp));
  });
}

ScalarFn scalar_fn_from_json(const json& j) {
  return guarded("function", [&]() -> ScalarFn {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "sqrt") return ScalarFn::sqrt();
    if (kind == "power") return ScalarFn::power(j.at("s").get<double>());
    if (kind == "log1p") return ScalarFn::log1p();
    if (kind == "affine") return ScalarFn::affine(j.at("slope").get<double>(), j.at("offset").get<double>());
    if (kind == "saturating") return ScalarFn::saturating(j.at("c").get<double>());
    if (kind == "angle") return ScalarFn::angle(j.at("a").get<double>());
    if (kind == "smoothed") return ScalarFn::smoothed(j.at("a").get<double>(), j.at("r").get<double>());
    if (kind == "smoothed-inverse")
      return ScalarFn::smoothed_inverse(j.at("a").get<double>(), j.at("r").get<double>());
    if (kind == "power-m") return ScalarFn::power_m(j.at("m").get<unsigned>());
    if (kind == "pwl") return pwl_from_json(j);
    if (kind == "over-t") return ScalarFn::over_t(scalar_fn_from_json(j.at("inner")));
    if (kind == "cone") {
      std::vector<ScalarFn> members;
      for (const auto& m : j.at("members")) members.push_back(scalar_fn_from_json(m));
      return ScalarFn(fn::ConeCombination{j.at("weights").get<std::vector<double>>(), std::move(members)});
    }
    throw ParseError("unknown function kind '" + kind + "'");
  });
}

json to_json(const Verdict& v) {
  json records = json::array();
  for (const auto& r : v.records) {
    records.push_back({{"norm", r.norm}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin},
                       {"cross_check", r.cross_check}});
  }
  return {{"check", v.check},
          {"pass", v.pass},
          {"tolerance", v.tolerance},
          {"min_margin", v.min_margin},
          {"consistent", v.consistent},
          {"seed", hex64(v.fingerprint.seed)},
          {"fingerprint", hex64(v.fingerprint.hash)},
          {"records", std::move(records)}};
}

Verdict verdict_from_json(const json& j) {
  return guarded("verdict", [&] {
    Verdict v;
    v.check = j.at("check").get<std::string>();
    for (const auto& r : j.at("records"))
      v.records.push_back({r.at("norm").get<std::string>(), r.at("lhs").get<double>(), r.at("rhs").get<double>(),
                           r.at("margin").get<double>(), r.value("cross_check", false)});
    v.pass = j.at("pass").get<bool>();
    v.tolerance = j.value("tolerance", kDefaultTol);
    const auto& mm = j.at("min_margin");  // infinity is written as null
    v.min_margin = mm.is_null() ? std::numeric_limits<double>::infinity() : mm.get<double>();
    v.consistent = j.value("consistent", true);
    v.fingerprint.seed = std::stoull(j.at("seed").get<std::string>(), nullptr, 16);
    v.fingerprint.hash = std::stoull(j.at("fingerprint").get<std::string>(), nullptr, 16);
    return v;
  });
}

json to_json(const CheckRequest& r) {
  json ops = json::array();
  for (const auto& m : r.operands) ops.push_back(to_json(m));
  json out{{"check", to_string(r.id)}, {"operands", std::move(ops)}, {"m", r.m},
           {"z", {{"re", r.z.real()}, {"im", r.z.imag()}}}};
  if (r.function) out["function"] = to_json(*r.function);
  if (r.j) out["j"] = *r.j;
  if (r.k) out["k"] = *r.k;
  if (r.tolerance) out["tolerance"] = *r.tolerance;
  return out;
}

CheckRequest request_from_json(const json& j) {
  return guarded("request", [&] {
    CheckRequest r;
    r.id = parse_check_id(j.at("check").get<std::string>());
    for (const auto& m : j.at("operands")) r.operands.push_back(matrix_from_json(m));
    r.m = j.value("m", 1u);
    if (j.contains("z")) r.z = {j["z"].at("re").get<double>(), j["z"].at("im").get<double>()};
    if (j.contains("function")) r.function = scalar_fn_from_json(j["function"]);
    if (j.contains("j")) r.j = j["j"].get<std::size_t>();
    if (j.contains("k")) r.k = j["k"].get<std::size_t>();
    if (j.contains("tolerance")) r.tolerance = j["tolerance"].get<double>();
    return r;
  });
}

json to_json(const Mutation& m) {
  return {{"target", to_string(m.target)}, {"kind", to_string(m.kind)}, {"expectation", to_string(m.expectation)}};
}

Mutation mutation_from_json(const json& j) {
  return guarded("mutation", [&] {
    return make_mutation(parse_check_id(j.at("target").get<std::string>()),
                         parse_mutation_kind(j.at("kind").get<std::string>()));
  });
}

json to_json(const Certificate& c) {
  json out{{"check", to_string(c.request.id)},
           {"inputs", to_json(c.request)},
           {"seed", hex64(c.seed)},
           {"margin", c.margin},
           {"verdict", to_json(c.verdict)},
           {"tool_version", c.tool_version}};
  out["mutation"] = c.mutation ? to_json(*c.mutation) : json(nullptr);
  return out;
}

Certificate certificate_from_json(const json& j) {
  return guarded("certificate", [&] {
    Certificate c;
    c.request = request_from_json(j.at("inputs"));
    if (j.contains("mutation") && !j["mutation"].is_null()) c.mutation = mutation_from_json(j["mutation"]);
    c.seed = std::stoull(j.at("seed").get<std::string>(), nullptr, 16);
    c.margin = j.at("margin").get<double>();
    c.tool_version = j.value("tool_version", std::string());
    if (j.contains("verdict"))
      c.verdict = verdict_from_json(j["verdict"]);
    else
      c.verdict.check = to_string(c.request.id);
    return c;
  });
}

}  // namespace normetry
