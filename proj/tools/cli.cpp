#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "normetry/errors.hpp"
#include "normetry/serialize.hpp"
#include "normetry/witnesses.hpp"

namespace normetry::cli {
namespace {

using json = nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw BadSpec("not a number: '" + s + "'");
  }
  if (used != s.size()) throw BadSpec("not a number: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  const double v = to_double(s);
  if (!(v >= 0) || v != std::floor(v) || v > 1e9) throw BadSpec("not a count: '" + s + "'");
  return static_cast<std::size_t>(v);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

json header(double wall_seconds) {
  return {{"tool", kToolVersion}, {"timestamp", timestamp()}, {"wall_seconds", wall_seconds}};
}

json config_json(const RunConfig& cfg) {
  json checks = json::array();
  for (CheckId id : cfg.checks) checks.push_back(to_string(id));
  json schatten = json::array();
  for (double p : cfg.schatten) schatten.push_back(NormSpec::schatten(p).label());
  json functions = json::array();
  for (const auto& f : cfg.functions) functions.push_back(to_json(f));
  return {{"checks", std::move(checks)}, {"dims", cfg.dims},           {"trials", cfg.trials},
          {"seed", hex64(cfg.seed)},     {"tolerance", cfg.tol},       {"schatten", std::move(schatten)},
          {"functions", std::move(functions)}};
}

CampaignConfig campaign_for(const RunConfig& cfg, CheckId id) {
  CampaignConfig c;
  c.check = id;
  c.trials = cfg.trials;
  c.dims = cfg.dims;
  c.root_seed = cfg.seed;
  c.options.tol = cfg.tol;
  c.options.schatten = cfg.schatten;
  if (auto cls = required_class(id)) {
    for (const auto& f : cfg.functions)
      if (f.has(*cls)) c.functions.push_back(f);
  }
  return c;
}

json summary_row(const CampaignReport& r, const std::string& mutation = "none") {
  return {{"check", to_string(r.check)},
          {"mutation", mutation},
          {"trials", r.trials_run},
          {"violations", r.violations.size()},
          {"inconsistencies", r.inconsistencies},
          {"min_margin", r.min_margin},
          {"ok", r.ok()}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw BadSpec("cannot write " + path);
  out << text;
  if (!out) throw BadSpec("cannot write " + path);
}

std::string render(const json& report, Format format) {
  return format == Format::Csv ? csv_summary(report) : report.dump(2) + "\n";
}

/// Map library exceptions to exit codes.
template <class F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConvergenceFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const UnknownCheck& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const BadSpec& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const ShapeValidationFailed& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const MixedClass& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("NORMETRY_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 0);
  return (end != nullptr && *end == '\0') ? static_cast<std::uint64_t>(v) : 0;
}

ScalarFn parse_function(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto args = split(rest, ':');
  auto arg = [&](std::size_t i) {
    if (i >= args.size()) throw BadSpec("missing parameter in function '" + spec + "'");
    return to_double(args[i]);
  };
  auto arity = [&](std::size_t n) {
    if (args.size() != n) throw BadSpec("function '" + head + "' takes " + std::to_string(n) + " parameter(s)");
  };
  if (head == "sqrt") return arity(0), ScalarFn::sqrt();
  if (head == "log1p") return arity(0), ScalarFn::log1p();
  if (head == "power") return arity(1), ScalarFn::power(arg(0));
  if (head == "power-m") {
    arity(1);
    const double m = arg(0);
    if (m < 1 || m != std::floor(m) || m > 64) throw BadSpec("power-m needs an integer exponent in [1, 64]");
    return ScalarFn::power_m(static_cast<unsigned>(m));
  }
  if (head == "affine") return arity(2), ScalarFn::affine(arg(0), arg(1));
  if (head == "saturating") return arity(1), ScalarFn::saturating(arg(0));
  if (head == "angle") return arity(1), ScalarFn::angle(arg(0));
  if (head == "smoothed") return arity(2), ScalarFn::smoothed(arg(0), arg(1));
  if (head == "smoothed-inverse") return arity(2), ScalarFn::smoothed_inverse(arg(0), arg(1));
  if (head == "over-t") {
    if (rest.empty()) throw BadSpec("over-t needs an inner function");
    return ScalarFn::over_t(parse_function(rest));
  }
  if (head == "pwl" || head == "json") {
    if (rest.empty()) throw BadSpec(head + " needs a file path");
    const json j = read_json_file(rest);
    try {
      return head == "pwl" ? pwl_from_json(j) : scalar_fn_from_json(j);
    } catch (const json::exception& e) {
      throw ParseError(rest + ": " + e.what());
    }
  }
  throw BadSpec("unknown function '" + spec + "'");
}

std::vector<CheckId> parse_checks(const std::string& list) {
  if (list == "all") return all_checks();
  std::vector<CheckId> out;
  for (const auto& item : split(list, ',')) {
    const CheckId id = parse_check_id(item);
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  if (out.empty()) throw UnknownCheck("no checks given");
  return out;
}

std::vector<std::size_t> parse_dims(const std::string& list) {
  std::vector<std::size_t> out;
  for (const auto& item : split(list, ',')) {
    const auto range = item.find("..");
    if (range == std::string::npos) {
      out.push_back(to_size(item));
      continue;
    }
    const std::size_t lo = to_size(item.substr(0, range));
    const std::size_t hi = to_size(item.substr(range + 2));
    if (lo > hi) throw BadSpec("empty dimension range '" + item + "'");
    for (std::size_t d = lo; d <= hi; ++d) out.push_back(d);
  }
  if (out.empty()) throw BadSpec("no dimensions given");
  for (std::size_t d : out)
    if (d == 0) throw BadSpec("dimensions start at 1");
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.checks.empty()) throw BadSpec("no checks selected");
  if (cfg.dims.empty()) throw BadSpec("no dimensions selected");
  for (std::size_t d : cfg.dims)
    if (d < 1 || d > 64) throw BadSpec("dimension " + std::to_string(d) + " outside [1, 64]");
  if (cfg.trials < 1) throw BadSpec("trials must be >= 1");
  if (!(cfg.tol >= 0) || !std::isfinite(cfg.tol)) throw BadSpec("tolerance must be finite and >= 0");
  for (double p : cfg.schatten)
    if (!(p >= 1)) throw BadSpec("Schatten exponents must be >= 1");
  if (cfg.functions.empty()) return;
  for (CheckId id : cfg.checks) {
    const auto cls = required_class(id);
    if (!cls) continue;
    const bool any = std::any_of(cfg.functions.begin(), cfg.functions.end(),
                                 [&](const ScalarFn& f) { return f.has(*cls); });
    if (!any) throw BadSpec("no supplied function is " + to_string(*cls) + ", as " + to_string(id) + " requires");
  }
}

Outcome run_verify(const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  bool pass = true;

  json witnesses = json::array();
  for (const auto& w : witness_table()) {
    if (std::find(cfg.checks.begin(), cfg.checks.end(), w.request.id) == cfg.checks.end()) continue;
    CheckOptions opt;
    opt.schatten = cfg.schatten;
    const Verdict v = evaluate(w.request, opt);
    const bool holds = witness_holds(w, v);
    pass = pass && holds;
    witnesses.push_back({{"name", w.name}, {"equality", w.equality}, {"holds", holds}, {"verdict", to_json(v)}});
  }

  json verdicts = json::array();
  json summary = json::array();
  for (CheckId id : cfg.checks) {
    CampaignConfig c = campaign_for(cfg, id);
    c.keep_all = true;
    const CampaignReport r = run_campaign(c);
    pass = pass && r.ok();
    for (const auto& rec : r.records) {
      verdicts.push_back({{"check", to_string(id)},
                          {"dim", rec.dim},
                          {"trial", rec.trial},
                          {"function", rec.function},
                          {"verdict", to_json(rec.certificate.verdict)}});
    }
    summary.push_back(summary_row(r));
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.report = {{"header", header(wall)},
                {"config", config_json(cfg)},
                {"witnesses", std::move(witnesses)},
                {"verdicts", std::move(verdicts)},
                {"summary", std::move(summary)},
                {"pass", pass}};
  out.exit_code = pass ? kOk : kViolation;
  return out;
}

Outcome run_falsify(const FalsifyConfig& cfg) {
  validate(cfg.run);
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<CheckId, std::optional<Mutation>>> plan;
  for (CheckId id : cfg.run.checks) {
    plan.emplace_back(id, std::nullopt);
    if (!cfg.mutation) continue;
    if (cfg.run.checks.size() == 1) {
      plan.emplace_back(id, make_mutation(id, *cfg.mutation));  // unsupported pair: BadSpec
      continue;
    }
    try {
      plan.emplace_back(id, make_mutation(id, *cfg.mutation));
    } catch (const BadSpec&) {
      // A multi-check run applies the mutation where it is defined.
    }
  }
  if (cfg.mutation && plan.size() == cfg.run.checks.size())
    throw BadSpec("mutation " + to_string(*cfg.mutation) + " applies to none of the selected checks");

  if (!cfg.certificate_dir.empty()) std::filesystem::create_directories(cfg.certificate_dir);

  bool pass = true;
  json campaigns = json::array();
  json summary = json::array();
  for (const auto& [id, mutation] : plan) {
    CampaignConfig c = campaign_for(cfg.run, id);
    c.mutation = mutation;
    const CampaignReport r = run_campaign(c);
    pass = pass && r.ok();
    const std::string mname = mutation ? to_string(mutation->kind) : "none";
    json certs = json::array();
    for (std::size_t i = 0; i < r.violations.size() && i < cfg.max_certificates; ++i) {
      const json cj = to_json(r.violations[i]);
      if (!cfg.certificate_dir.empty()) {
        const auto file = std::filesystem::path(cfg.certificate_dir) /
                          (to_string(id) + "-" + mname + "-" + std::to_string(i) + ".json");
        write_output(file.string(), cj.dump(2) + "\n");
      }
      certs.push_back(cj);
    }
    json row = summary_row(r, mname);
    row["expectation"] = mutation ? to_string(mutation->expectation) : "must-hold";
    json campaign = row;
    campaign["certificates"] = std::move(certs);
    campaigns.push_back(std::move(campaign));
    summary.push_back(std::move(row));
  }

  json config = config_json(cfg.run);
  config["mutation"] = cfg.mutation ? json(to_string(*cfg.mutation)) : json(nullptr);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.report = {{"header", header(wall)},
                {"config", std::move(config)},
                {"campaigns", std::move(campaigns)},
                {"summary", std::move(summary)},
                {"pass", pass}};
  out.exit_code = pass ? kOk : kViolation;
  return out;
}

std::string csv_summary(const json& report) {
  std::ostringstream out;
  out.precision(17);
  out << "check,mutation,trials,violations,inconsistencies,min_margin\n";
  for (const auto& row : report.at("summary")) {
    out << row.at("check").get<std::string>() << ',' << row.at("mutation").get<std::string>() << ','
        << row.at("trials").get<std::size_t>() << ',' << row.at("violations").get<std::size_t>() << ','
        << row.at("inconsistencies").get<std::size_t>() << ',' << row.at("min_margin").get<double>() << '\n';
  }
  return out.str();
}

int cmd_verify(const RunConfig& cfg, std::ostream& err) {
  return guarded(
      [&] {
        const Outcome o = run_verify(cfg);
        write_output(cfg.output, render(o.report, cfg.format));
        if (o.exit_code != kOk) err << "verify: violations found\n";
        return o.exit_code;
      },
      err);
}

int cmd_falsify(const FalsifyConfig& cfg, std::ostream& err) {
  return guarded(
      [&] {
        const Outcome o = run_falsify(cfg);
        write_output(cfg.run.output, render(o.report, cfg.run.format));
        if (o.exit_code != kOk) err << "falsify: expectations not met\n";
        return o.exit_code;
      },
      err);
}

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err) {
  Certificate cert;
  try {
    cert = certificate_from_json(read_json_file(path));
  } catch (const std::exception& e) {
    err << "replay: " << e.what() << "\n";
    return kUsage;
  }
  return guarded(
      [&] {
        const double fresh = replay_margin(cert);
        const bool match = fresh == cert.margin;
        out.precision(17);
        out << "replay " << to_string(cert.request.id) << ": stored " << cert.margin << ", recomputed " << fresh
            << (match ? ", match\n" : ", MISMATCH\n");
        return match ? kOk : kViolation;
      },
      err);
}

int cmd_gen(const GenConfig& cfg, std::ostream& err) {
  return guarded(
      [&] {
        write_output(cfg.output, to_json(generate(cfg.spec)).dump(2) + "\n");
        return kOk;
      },
      err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of symmetric-norm matrix inequalities"};
  app.require_subcommand(1);

  struct Common {
    std::string checks = "all";
    std::string dims = "1..6";
    std::size_t trials = 500;
    std::uint64_t seed = default_seed();
    double tol = kDefaultTol;
    std::string schatten = "1,1.5,2,3,inf";
    std::string functions;
    std::string output;
    std::string format = "json";
  };
  auto add_common = [](CLI::App* sub, Common& c, const char* check_flag) {
    sub->add_option(check_flag, c.checks, "check ids, comma separated, or 'all'");
    sub->add_option("--dims", c.dims, "dimensions, e.g. 2,4 or 1..6");
    sub->add_option("--trials", c.trials, "seeded trials per dimension");
    sub->add_option("--seed", c.seed, "root seed (default: $NORMETRY_SEED or 0)");
    sub->add_option("--tol", c.tol, "scaled margin tolerance");
    sub->add_option("--schatten", c.schatten, "Schatten exponents, comma separated");
    sub->add_option("--functions", c.functions, "override function set, e.g. sqrt,power:0.5");
    sub->add_option("--output,-o", c.output, "report path (default: stdout)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  Common verify_opts;
  auto* verify = app.add_subcommand("verify", "run checkers over seeded trials and the witness table");
  add_common(verify, verify_opts, "--checks");

  Common falsify_opts;
  std::string mutate;
  std::string cert_dir;
  std::size_t max_certs = 16;
  auto* falsify = app.add_subcommand("falsify", "run mutation campaigns");
  add_common(falsify, falsify_opts, "--check,--checks");
  falsify->add_option("--mutate", mutate, "swap-function-class, drop-vanishing, drop-normality, drop-expansive");
  falsify->add_option("--certificates", cert_dir, "directory for certificate files");
  falsify->add_option("--max-certificates", max_certs, "certificates kept per campaign");

  std::string cert_path;
  auto* replay = app.add_subcommand("replay", "recompute a certificate's margin");
  replay->add_option("certificate", cert_path, "certificate file")->required();

  std::string kind = "general";
  GenConfig gen_cfg;
  auto* gen = app.add_subcommand("gen", "write a sample matrix");
  gen->add_option("--kind", kind, "psd, pd, hermitian, normal, unitary, contraction, expansive, general");
  gen->add_option("--n", gen_cfg.spec.n, "dimension");
  gen->add_option("--seed", gen_cfg.spec.seed, "seed")->default_val(default_seed());
  gen->add_option("--scale", gen_cfg.spec.scale, "spectral scale");
  gen->add_option("--min-eig", gen_cfg.spec.min_eig, "smallest eigenvalue for pd");
  gen->add_option("--output,-o", gen_cfg.output, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto to_run = [](const Common& c) {
    RunConfig cfg;
    cfg.checks = parse_checks(c.checks);
    cfg.dims = parse_dims(c.dims);
    cfg.trials = c.trials;
    cfg.seed = c.seed;
    cfg.tol = c.tol;
    cfg.schatten.clear();
    for (const auto& p : split(c.schatten, ',')) cfg.schatten.push_back(to_double(p));
    if (!c.functions.empty())
      for (const auto& f : split(c.functions, ',')) cfg.functions.push_back(parse_function(f));
    cfg.output = c.output;
    cfg.format = c.format == "csv" ? Format::Csv : Format::Json;
    return cfg;
  };

  if (verify->parsed()) {
    RunConfig cfg;
    const int rc = guarded([&] { return cfg = to_run(verify_opts), kOk; }, err);
    return rc != kOk ? kUsage : cmd_verify(cfg, err);
  }
  if (falsify->parsed()) {
    FalsifyConfig cfg;
    const int rc = guarded(
        [&] {
          cfg.run = to_run(falsify_opts);
          if (!mutate.empty()) cfg.mutation = parse_mutation_kind(mutate);
          cfg.certificate_dir = cert_dir;
          cfg.max_certificates = max_certs;
          return kOk;
        },
        err);
    return rc != kOk ? kUsage : cmd_falsify(cfg, err);
  }
  if (replay->parsed()) return cmd_replay(cert_path, out, err);
  const int rc = guarded([&] { return gen_cfg.spec.kind = parse_gen_kind(kind), kOk; }, err);
  return rc != kOk ? kUsage : cmd_gen(gen_cfg, err);
}

}  // namespace normetry::cli
