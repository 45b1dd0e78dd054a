#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "typdeg/cli.hpp"

using typdeg::cli::Environment;
using typdeg::cli::run_command;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const Environment& env = {}) {
  std::ostringstream out, err;
  int code = run_command(args, out, err, env);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "typdeg_cli_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::filesystem::remove_all(p);
  return p;
}

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<nlohmann::json> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST(Cli, DegreeByEnumeration) {
  auto r = run({"degree", "--sig", "function", "--n", "4", "--prop", "fneq", "--kind", "typ"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("189/256"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("enumeration"), std::string::npos);
}

TEST(Cli, DegreeFromFormulaText) {
  auto r = run({"degree", "--sig", "unary:1", "--n", "5", "--prop", "U1(x)"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1/2"), std::string::npos) << r.out;
}

TEST(Cli, OddNeutralityIsAbsent) {
  auto r = run({"degree", "--sig", "unary:1", "--n", "5", "--prop", "u(1)", "--kind", "ntr"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("absent"), std::string::npos);
}

TEST(Cli, ClosedFormBeyondCaps) {
  auto r = run({"degree", "--sig", "function", "--n", "40", "--prop", "fneq"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("closed-form"), std::string::npos);
  auto forced = run({"degree", "--sig", "function", "--n", "40", "--prop", "fneq", "--method", "enumeration"});
  EXPECT_EQ(forced.code, 2);
  EXPECT_NE(forced.err.find("cap"), std::string::npos) << forced.err;
}

TEST(Cli, MuWithWitnessCount) {
  auto r = run({"mu", "--sig", "unary:1", "--n", "4", "--prop", "u(1)", "--m", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("11/16"), std::string::npos) << r.out;
  auto sentence = run({"mu", "--sig", "function", "--n", "3", "--prop", "nofix"});
  EXPECT_NE(sentence.out.find("8/27"), std::string::npos) << sentence.out;
}

TEST(Cli, MonteCarloFallback) {
  auto r = run({"mu", "--sig", "graph", "--n", "12", "--prop", "iso", "--m", "1", "--samples", "500", "--seed", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("monte-carlo"), std::string::npos) << r.out;
}

TEST(Cli, JsonlManifest) {
  auto path = scratch("degree.jsonl");
  for (int i = 0; i < 2; ++i) {
    auto r = run({"degree", "--sig", "function", "--n", "3", "--prop", "fneq", "--format", "jsonl", "--out",
                  path.string(), "--seed", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  auto lines = read_jsonl(path);
  ASSERT_EQ(lines.size(), 4U);
  EXPECT_EQ(lines[0]["record"], "degree");
  EXPECT_EQ(lines[0]["value"], "20/27");
  EXPECT_EQ(lines[1]["record"], "manifest");
  EXPECT_EQ(lines[1]["seed"], 8);
  EXPECT_EQ(lines[1]["generator"], "mt19937_64+splitmix64-streams/v1");
  EXPECT_EQ(lines[1]["caps"], "unary=24,function=8,graph=7");
  EXPECT_EQ(lines[1]["signature"], "function");
  for (const char* key : {"tool_version", "command_line", "timestamp", "convention"}) {
    EXPECT_TRUE(lines[1].contains(key)) << key;
  }
  EXPECT_EQ(lines[0], lines[2]);
  lines[1].erase("timestamp");
  lines[3].erase("timestamp");
  EXPECT_EQ(lines[1], lines[3]);
}

TEST(Cli, SequenceCsvToStdout) {
  auto r = run({"sequence", "--sig", "function", "--prop", "fneq", "--kind", "typ", "--ns", "2,3,4", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,kind,method,value,exact,ci_low,ci_high,target,gap\n", 0), 0U) << r.out;
  EXPECT_NE(r.out.find("4,typ,enumeration,0.73828125,189/256,,,1,"), std::string::npos) << r.out;
}

TEST(Cli, SequenceSummary) {
  auto r = run({"sequence", "--sig", "function", "--prop", "fneq", "--ns", "50:500:loggrid", "--method", "closed-form"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("decreasing-gap"), std::string::npos) << r.out;
}

TEST(Cli, SampleEmitsStructures) {
  auto r = run({"sample", "--sig", "graph", "--n", "5", "--count", "3", "--prop", "iso", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["family"], "graph");
    EXPECT_TRUE(j.contains("extension"));
    ++lines;
  }
  EXPECT_EQ(lines, 3);
  EXPECT_EQ(r.out, run({"sample", "--sig", "graph", "--n", "5", "--count", "3", "--prop", "iso", "--seed", "1"}).out);
}

TEST(Cli, VerifySuite) {
  auto r = run({"verify", "--suite", "logic"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS logic/"), std::string::npos);
  auto bad = run({"verify", "--suite", "nonsense"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, FormulasListAndCanonicalize) {
  auto r = run({"formulas", "--sig", "graph"});
  EXPECT_NE(r.out.find("adjk(2)"), std::string::npos);
  auto c = run({"formulas", "--sig", "unary:2", "--prop", "U1(y)&(U2(y))"});
  EXPECT_NE(c.out.find("U1(y) & U2(y)"), std::string::npos) << c.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"degree", "--sig", "function", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"degree", "--sig", "function", "--n", "3", "--prop", "U1(x)"}).code, 2);
  EXPECT_EQ(run({"degree", "--sig", "function", "--n", "x", "--prop", "fneq"}).code, 2);
  EXPECT_EQ(run({"degree", "--bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  auto parse = run({"degree", "--sig", "unary:1", "--n", "3", "--prop", "U1(x"});
  EXPECT_NE(parse.err.find("position"), std::string::npos) << parse.err;
}

TEST(Cli, SettingsPrecedence) {
  auto config = scratch("settings.conf");
  {
    std::ofstream out(config);
    out << "# test settings\ncaps = function=3\nseed = 5\n";
  }
  auto base = std::vector<std::string>{"degree", "--sig", "function", "--n", "4", "--prop", "F(F(x)) = x",
                                       "--config", config.string()};
  // Config caps: n=4 exceeds function=3 and there is no closed form, so sampling runs.
  auto r = run(base);
  EXPECT_NE(r.out.find("monte-carlo"), std::string::npos) << r.out << r.err;
  EXPECT_NE(r.out.find("seed 5"), std::string::npos) << r.out;

  auto flags = base;
  flags.insert(flags.end(), {"--caps-override", "function=4", "--seed", "6"});
  EXPECT_NE(run(flags).out.find("enumeration"), std::string::npos);

  // Environment beats flags.
  auto env = run(flags, {{"TYPDEG_CAPS", "function=2"}, {"TYPDEG_SEED", "9"}});
  EXPECT_NE(env.out.find("seed 9"), std::string::npos) << env.out;

  EXPECT_EQ(run(base, {{"TYPDEG_SEED", "nine"}}).code, 2);
}

TEST(Cli, OutDirPrefixesRelativeOutput) {
  auto dir = scratch("outdir");
  std::filesystem::create_directories(dir);
  auto r = run({"degree", "--sig", "function", "--n", "3", "--prop", "fneq", "--out", "r.json"},
               {{"TYPDEG_OUT_DIR", dir.string()}});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir / "r.json");
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["value"], "20/27");
  auto missing = run({"degree", "--sig", "function", "--n", "3", "--prop", "fneq", "--out", "/nonexistent/dir/x.json"});
  EXPECT_EQ(missing.code, 2);
}
