#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "intentic/cli.hpp"
#include "intentic/io.hpp"
#include "intentic/kernel.hpp"

using namespace intentic;
using intentic::testing::F;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("intentic_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string proof_file(const std::string& name, const Proof& p) {
    return file(name, io::document("proof", io::to_json(p)).dump(2));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CheckOrElimPrime) {
  Proof p = nd::or_elim_nh(nd::assume(F("P(c) | Q(c)")), nd::assume(F("P(c) -> R(c)")), nd::assume(F("Q(c) -> R(c)")));
  Outcome r = run({"check", "--logic", "nh", proof_file("p.json", p)});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("\"valid\""), std::string::npos);
}

TEST_F(Cli, CheckImpIntroUnderNh) {
  Proof p = nd::imp_intro(F("P(c)"), "h", nd::assume(F("P(c)"), "h"));
  std::string path = proof_file("p.json", p);
  EXPECT_EQ(run({"check", path}).code, cli::kOk);
  Outcome r = run({"check", "--logic", "nh", path});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_NE(r.out.find("\"path\""), std::string::npos);
  EXPECT_NE(r.out.find("root"), std::string::npos);
}

TEST_F(Cli, PaProveOneNodeProof) {
  Outcome r = run({"pa", "prove", "forall x. exists y. S(x,y)"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = io::json::parse(r.out);
  const auto& proof = io::payload(j, "proof");
  EXPECT_EQ(proof.at("rule"), "assume");
  EXPECT_FALSE(proof.contains("premises") && !proof.at("premises").empty());
  // The emitted proof re-validates.
  Outcome c = run({"check", "--logic", "nh", "--pa-axiomatic", file("out.json", r.out)});
  EXPECT_EQ(c.code, cli::kOk) << c.err;
}

TEST_F(Cli, PaExitCodes) {
  EXPECT_EQ(run({"pa", "prove", "S(0,0)"}).code, cli::kExhausted);
  EXPECT_EQ(run({"pa", "prove", "S(0,"}).code, cli::kParseError);
  EXPECT_EQ(run({"pa", "prove", "0 = 0", "--bogus"}).code, cli::kConfigError);
  EXPECT_EQ(run({"pa", "prove", "0 = 0", "--extra", (dir_ / "missing").string()}).code, cli::kConfigError);
}

TEST_F(Cli, PaTraceFormat) {
  Outcome r = run({"pa", "prove", "--trace", "exists y. S(0,y)"});
  ASSERT_EQ(r.code, cli::kOk);
  std::istringstream lines(r.err);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 3) << line;
  }
  EXPECT_GT(n, 0u);
}

TEST_F(Cli, PaExtras) {
  std::string extras = file("x.txt", "const a b\nS(0,a)\nS(0,b)\n");
  EXPECT_EQ(run({"pa", "prove", "a = b", "--extra", extras}).code, cli::kOk);
}

TEST_F(Cli, ParseCanonicalizes) {
  Outcome r = run({"parse", "P(0) & (Q(0) & T(0))"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "P(0) & Q(0) & T(0)\n");
  Outcome s = run({"parse"}, "P(0) ->\n");
  EXPECT_EQ(s.code, cli::kParseError);
}

TEST_F(Cli, TranslateExtractLoop) {
  io::json bundle;
  bundle["format_version"] = 1;
  Proof p = nd::imp_intro(F("P(c)"), "h", nd::and_intro(nd::assume(F("P(c)"), "h"), nd::assume(F("Q(c)"))));
  bundle["proof"] = io::to_json(p);
  bundle["gamma"] = {"Q(c)"};
  Outcome t = run({"--const", "c", "translate", file("b.json", bundle.dump())});
  ASSERT_EQ(t.code, cli::kOk) << t.err;
  std::string out = file("t.json", t.out);
  EXPECT_EQ(run({"--const", "c", "mt-check", out}).code, cli::kOk);
  Outcome e = run({"--const", "c", "extract", out});
  ASSERT_EQ(e.code, cli::kOk) << e.err;
  Outcome c = run({"--const", "c", "check", file("e.json", e.out)});
  EXPECT_EQ(c.code, cli::kOk) << c.err;
}

TEST_F(Cli, StateCheck) {
  StatePtr u = IntenticState::leaf(BasicState({F("P(c)")}));
  StatePtr v = app(u, {{F("Q(c)"), IntenticState::leaf(BasicState({F("P(c)"), F("Q(c)")})), {}}}, WitnessRegistry{});
  std::string us = file("u.json", io::document("state", io::to_json(*u)).dump());
  std::string vs = file("v.json", io::document("state", io::to_json(*v)).dump());
  EXPECT_EQ(run({"state-check", us}).code, cli::kOk);
  EXPECT_EQ(run({"state-check", us, "--fine-ext", vs}).code, cli::kOk);
  EXPECT_EQ(run({"state-check", vs, "--fine-ext", us}).code, cli::kInvalid);
  EXPECT_EQ(run({"state-check", file("bad.json", "{")}).code, cli::kParseError);
}

TEST_F(Cli, FramesFuzz) {
  Outcome r = run({"frames", "fuzz", "--seed", "1", "--count", "20"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "trials=20 pass=20 fail=0\n");
}

TEST_F(Cli, Help) {
  Outcome r = run({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("pa"), std::string::npos);
  Outcome p = run({"pa", "prove", "--help"});
  for (const char* flag : {"--depth", "--extra", "--efq", "--trace"}) EXPECT_NE(p.out.find(flag), std::string::npos);
}

TEST_F(Cli, ByteDeterminism) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"pa", "prove", "exists z. Mul(0,0,z)"}, {"frames", "fuzz", "--seed", "9", "--count", "10"}, {"parse", "~P(0)"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}
