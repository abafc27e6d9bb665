#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "normetry/errors.hpp"
#include "normetry/linalg.hpp"
#include "normetry/serialize.hpp"

using namespace normetry;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "normetry");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("normetry-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

json load(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(CliParse, Dims) {
  EXPECT_EQ(cli::parse_dims("2,4"), (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(cli::parse_dims("1..4"), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_THROW(cli::parse_dims("0"), BadSpec);
  EXPECT_THROW(cli::parse_dims("3..1"), BadSpec);
  EXPECT_THROW(cli::parse_dims("x"), BadSpec);
}

TEST(CliParse, Checks) {
  EXPECT_EQ(cli::parse_checks("all").size(), 16u);
  EXPECT_EQ(cli::parse_checks("thm1.1,ineq4"), (std::vector<CheckId>{CheckId::Thm1_1, CheckId::Ineq4}));
  EXPECT_THROW(cli::parse_checks("nosuch"), UnknownCheck);
}

TEST(CliParse, Functions) {
  EXPECT_EQ(cli::parse_function("sqrt")(4.0), 2.0);
  EXPECT_DOUBLE_EQ(cli::parse_function("power:0.5")(9.0), 3.0);
  EXPECT_DOUBLE_EQ(cli::parse_function("affine:2:1")(3.0), 7.0);
  EXPECT_DOUBLE_EQ(cli::parse_function("angle:1")(3.0), 2.0);
  EXPECT_DOUBLE_EQ(cli::parse_function("over-t:sqrt")(4.0), 0.5);
  EXPECT_EQ(cli::parse_function("power-m:3")(2.0), 8.0);
  EXPECT_THROW(cli::parse_function("cosh"), BadSpec);
  EXPECT_THROW(cli::parse_function("power"), BadSpec);
}

TEST(CliParse, PwlFile) {
  TempDir dir;
  std::ofstream(dir.file("f.json")) << R"({"breakpoints": [[0, 0], [1, 1], [4, 2]]})";
  EXPECT_DOUBLE_EQ(cli::parse_function("pwl:" + dir.file("f.json"))(2.5), 1.5);
  EXPECT_THROW(cli::parse_function("pwl:" + dir.file("missing.json")), Error);
}

TEST(CliParse, ValidateRejectsMismatchedFunctions) {
  cli::RunConfig cfg;
  cfg.checks = {CheckId::Thm1_1};
  cfg.functions = {ScalarFn::power_m(2)};
  EXPECT_THROW(cli::validate(cfg), BadSpec);
  cfg.functions = {ScalarFn::sqrt()};
  EXPECT_NO_THROW(cli::validate(cfg));
}

TEST(CliVerify, Thm11TwoDimsHundredTrials) {
  TempDir dir;
  const auto r = run_cli({"verify", "--checks", "thm1.1", "--dims", "2,4", "--trials", "100", "--seed", "42", "-o",
                          dir.file("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const json rep = load(dir.file("r.json"));
  EXPECT_EQ(rep.at("verdicts").size(), 200u);
  EXPECT_FALSE(rep.at("witnesses").empty());
  for (const auto& w : rep.at("witnesses")) EXPECT_TRUE(w.at("holds").get<bool>());
  EXPECT_TRUE(rep.at("pass").get<bool>());
}

TEST(CliVerify, AllChecksOneTrial) {
  TempDir dir;
  const auto r = run_cli({"verify", "--checks", "all", "--trials", "1", "-o", dir.file("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load(dir.file("r.json")).at("summary").size(), 16u);
}

TEST(CliVerify, UsageErrors) {
  EXPECT_EQ(run_cli({"verify", "--checks", "nosuch"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--dims", "0"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--trials", "many"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--checks", "thm1.1", "--functions", "power-m:2"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(CliVerify, CsvSummary) {
  TempDir dir;
  const auto r = run_cli({"verify", "--checks", "thm1.2,ineq4", "--trials", "3", "--format", "csv", "-o",
                          dir.file("r.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(dir.file("r.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("thm1.2"), std::string::npos);
  EXPECT_NE(csv.find("ineq4"), std::string::npos);
}

TEST(CliVerify, ReportsAreDeterministicOutsideHeader) {
  TempDir dir;
  for (const char* name : {"a.json", "b.json"})
    ASSERT_EQ(run_cli({"verify", "--checks", "all", "--trials", "2", "--seed", "123", "-o", dir.file(name)}).code, 0);
  json a = load(dir.file("a.json")), b = load(dir.file("b.json"));
  a.erase("header");
  b.erase("header");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(CliVerify, SeedFromEnvironment) {
  TempDir dir;
  ::setenv("NORMETRY_SEED", "77", 1);
  ASSERT_EQ(run_cli({"verify", "--checks", "ineq4", "--trials", "2", "-o", dir.file("env.json")}).code, 0);
  ::unsetenv("NORMETRY_SEED");
  ASSERT_EQ(run_cli({"verify", "--checks", "ineq4", "--trials", "2", "--seed", "77", "-o", dir.file("flag.json")}).code, 0);
  json a = load(dir.file("env.json")), b = load(dir.file("flag.json"));
  a.erase("header");
  b.erase("header");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(CliFalsify, SwapFunctionClassWritesReplayableCertificates) {
  TempDir dir;
  const auto r = run_cli({"falsify", "--check", "thm1.1", "--mutate", "swap-function-class", "--trials", "20",
                          "--certificates", dir.file("certs"), "-o", dir.file("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto certs = files_in(dir.file("certs"));
  ASSERT_FALSE(certs.empty());
  for (const auto& c : certs) {
    const auto rep = run_cli({"replay", c.string()});
    EXPECT_EQ(rep.code, 0) << rep.out << rep.err;
    EXPECT_NE(rep.out.find("match"), std::string::npos);
  }
}

TEST(CliFalsify, OtherMustViolateMutations) {
  TempDir dir;
  EXPECT_EQ(run_cli({"falsify", "--check", "thm1.2", "--mutate", "drop-vanishing", "--trials", "10", "-o",
                     dir.file("a.json")}).code, 0);
  EXPECT_EQ(run_cli({"falsify", "--check", "thm2.4", "--mutate", "drop-expansive", "--trials", "10", "-o",
                     dir.file("b.json")}).code, 0);
}

TEST(CliFalsify, ExploratoryDropNormality) {
  TempDir dir;
  const auto r = run_cli({"falsify", "--check", "thm3.1", "--mutate", "drop-normality", "--trials", "50", "--dims",
                          "2,3", "-o", dir.file("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const json rep = load(dir.file("r.json"));
  bool exploratory = false;
  for (const auto& c : rep.at("campaigns"))
    if (c.value("expectation", "") == "exploratory") exploratory = true;
  EXPECT_TRUE(exploratory);
}

TEST(CliFalsify, UnsupportedPairIsUsageError) {
  EXPECT_EQ(run_cli({"falsify", "--check", "ineq4", "--mutate", "drop-expansive"}).code, 2);
  EXPECT_EQ(run_cli({"falsify", "--check", "thm1.1", "--mutate", "nonsense"}).code, 2);
}

TEST(CliReplay, TamperedAndGarbledCertificates) {
  TempDir dir;
  ASSERT_EQ(run_cli({"falsify", "--check", "thm2.4", "--mutate", "drop-expansive", "--trials", "5", "--dims", "3",
                     "--certificates", dir.file("certs"), "-o", dir.file("r.json")})
                .code,
            0);
  const auto certs = files_in(dir.file("certs"));
  ASSERT_FALSE(certs.empty());
  json cert = load(certs.front().string());
  EXPECT_EQ(run_cli({"replay", certs.front().string()}).code, 0);

  cert["margin"] = cert["margin"].get<double>() * (1 + 1e-15) - 1e-300;
  std::ofstream(dir.file("tampered.json")) << cert.dump();
  EXPECT_EQ(run_cli({"replay", dir.file("tampered.json")}).code, 1);

  std::ofstream(dir.file("garbled.json")) << "{\"check\": ";
  EXPECT_EQ(run_cli({"replay", dir.file("garbled.json")}).code, 2);
  EXPECT_EQ(run_cli({"replay", dir.file("absent.json")}).code, 2);
}

TEST(CliReplay, CertificateIsIndependentOfRunShape) {
  TempDir dir;
  ASSERT_EQ(run_cli({"falsify", "--check", "thm1.2", "--mutate", "drop-vanishing", "--trials", "7", "--dims",
                     "5,6", "--seed", "9", "--certificates", dir.file("certs"), "-o", dir.file("r.json")})
                .code,
            0);
  for (const auto& c : files_in(dir.file("certs"))) EXPECT_EQ(run_cli({"replay", c.string()}).code, 0);
}

TEST(CliGen, WritesRequestedKind) {
  TempDir dir;
  ASSERT_EQ(run_cli({"gen", "--kind", "psd", "--n", "4", "--seed", "3", "-o", dir.file("m.json")}).code, 0);
  const Matrix m = matrix_from_json(load(dir.file("m.json")));
  EXPECT_EQ(m.dim(), 4u);
  EXPECT_TRUE(is_psd(HermitianMatrix(m), 1e-12));
  ASSERT_EQ(run_cli({"gen", "--kind", "psd", "--n", "4", "--seed", "3", "-o", dir.file("again.json")}).code, 0);
  EXPECT_EQ(slurp(dir.file("m.json")), slurp(dir.file("again.json")));
  EXPECT_EQ(run_cli({"gen", "--kind", "blob", "--n", "4"}).code, 2);
  EXPECT_EQ(run_cli({"gen", "--kind", "psd", "--n", "0"}).code, 2);
}
