#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace hmpeq {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string model(const std::string& name) {
  return std::string(HMPEQ_MODELS_DIR) + "/" + name;
}

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hmpeq");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

bool contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

TEST(Cli, EquivalentPairExitsZero) {
  const auto r =
      run({"equiv", model("always_a_2state.hmm"), model("always_a_1state.hmm")});
  EXPECT_EQ(r.code, cli::kExitEquivalent);
  EXPECT_TRUE(contains(r.out, "verdict: equivalent\n"));
  EXPECT_TRUE(contains(r.out, "reason: all-checks-passed"));
}

TEST(Cli, WitnessReported) {
  const auto r = run({"equiv", model("coin.hmm"), model("biased.hmm")});
  EXPECT_EQ(r.code, cli::kExitNotEquivalent);
  EXPECT_TRUE(contains(r.out, "verdict: not equivalent"));
  EXPECT_TRUE(contains(r.out, "witness: a\n"));
  EXPECT_TRUE(contains(r.out, "p_A(a) = 1/2"));
  EXPECT_TRUE(contains(r.out, "p_B(a) = 1/3"));
}

TEST(Cli, MissingFileExitsTwo) {
  const auto r = run({"equiv", model("coin.hmm"), "/nonexistent.hmm"});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_TRUE(contains(r.err, "error:"));
}

TEST(Cli, UnknownFlagExitsTwo) {
  EXPECT_EQ(run({"dim", model("coin.hmm"), "--frobnicate"}).code,
            cli::kExitError);
  EXPECT_EQ(run({}).code, cli::kExitError);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, DimProbBasis) {
  EXPECT_EQ(run({"dim", model("coin.hmm")}).out, "1\n");
  EXPECT_EQ(run({"prob", model("coin.hmm"), "ab"}).out, "1/4\n");
  EXPECT_EQ(run({"prob", model("coin.hmm"), "-"}).out, "1\n");
  EXPECT_EQ(run({"prob", model("swap.qrw"), "ba"}).out, "1\n");
  const auto b = run({"basis", model("always_a_2state.hmm")});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(contains(b.out, "I: □"));
  EXPECT_TRUE(contains(b.out, "J: □"));
}

TEST(Cli, DecimalOutput) {
  const auto r = run({"--decimal", "prob", model("biased.hmm"), "a"});
  EXPECT_TRUE(contains(r.out, "1/3 (~0.333333"));
}

TEST(Cli, JsonEquiv) {
  const auto r = run({"--format", "json", "equiv", model("coin.hmm"),
                      model("biased.hmm")});
  ASSERT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["format_version"], cli::kFormatVersion);
  EXPECT_EQ(j["equivalent"], false);
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_EQ(j["reason"], "one-step-mismatch");
  EXPECT_EQ(j["witness"], "a");
  EXPECT_EQ(j["value_a"], "1/2");
  EXPECT_EQ(j["value_b"], "1/3");
  EXPECT_TRUE(j["tolerance"].is_null());
}

TEST(Cli, JsonFlagAfterSubcommand) {
  const auto r = run({"dim", model("coin.hmm"), "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_EQ(j["kind"], "hmm");
}

TEST(Cli, FloatVerdictMentionsTolerance) {
  const auto r = run({"equiv", model("hadamard.qrw"), model("hadamard.qrw")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "equivalent within tolerance"));
  EXPECT_TRUE(contains(r.out, "pivot 1.0e-09"));
}

TEST(Cli, MixedModesExitTwo) {
  const auto r = run({"equiv", model("coin.hmm"), model("hadamard.qrw")});
  EXPECT_EQ(r.code, cli::kExitError);
}

TEST(Cli, ToleranceEnvironment) {
  ::setenv(cli::kToleranceEnv, "not-a-number", 1);
  EXPECT_EQ(run({"dim", model("coin.hmm")}).code, cli::kExitError);
  ::setenv(cli::kToleranceEnv, "1e-6", 1);
  EXPECT_EQ(run({"dim", model("hadamard.qrw")}).code, 0);
  ::unsetenv(cli::kToleranceEnv);
}

TEST(Cli, PfaNoticeAndWitnessSearch) {
  const auto eq = run({"equiv", model("geometric.pfa"),
                       model("geometric_split.pfa")});
  EXPECT_EQ(eq.code, 0);
  EXPECT_TRUE(contains(eq.err, "probabilistic automaton"));
  const auto ne = run({"equiv", "--witness-search", model("stop_now.pfa"),
                       model("geometric.pfa")});
  EXPECT_EQ(ne.code, 1);
  EXPECT_TRUE(contains(ne.out, "witness: $"));
  EXPECT_TRUE(contains(ne.out, "acceptance witness: □"));
}

TEST(Cli, OracleModes) {
  const auto table = run({"oracle", model("coin.hmm"), "-L", "1"});
  EXPECT_EQ(table.code, 0);
  EXPECT_EQ(table.out, "□\t1\na\t1/2\nb\t1/2\n");
  EXPECT_EQ(run({"oracle", model("always_a_2state.hmm"),
                 model("always_a_1state.hmm"), "-L", "4"})
                .code,
            0);
  const auto differ =
      run({"oracle", model("coin.hmm"), model("biased.hmm"), "-L", "2"});
  EXPECT_EQ(differ.code, 1);
  EXPECT_TRUE(contains(differ.out, "differ at a"));
  EXPECT_EQ(run({"--budget", "3", "oracle", model("coin.hmm"), "-L", "5"}).code,
            cli::kExitError);
}

TEST(Cli, Validate) {
  const auto ok = run({"validate", model("coin.hmm")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "valid hmm (exact, n = 1)\n");
  const auto path = temp_file(
      "hmpeq_cli_invalid.hmm",
      "kind: hmm\nmode: exact\nalphabet: a\nn: 1\npi: 1/2\nM:\n  1\nE:\n  1\n");
  const auto bad = run({"validate", path});
  EXPECT_EQ(bad.code, cli::kExitError);
  EXPECT_TRUE(contains(bad.err, "pi sums to 1/2"));
  const auto syntax = temp_file("hmpeq_cli_syntax.hmm", "kind hmm\n");
  const auto s = run({"validate", syntax});
  EXPECT_EQ(s.code, cli::kExitError);
  EXPECT_TRUE(contains(s.err, "line 1"));
}

TEST(Cli, Deterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"basis", model("geometric_split.pfa")},
           {"--format", "json", "equiv", model("vertex_trivial_1.qrw"),
            model("vertex_trivial_2.qrw")},
           {"equiv", model("coin.hmm"), model("swap.qrw")}}) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
  }
}

}  // namespace
}  // namespace hmpeq
