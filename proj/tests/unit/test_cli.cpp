#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "pct/cli.hpp"
#include "pct/speclang/model.hpp"

using namespace pct;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result pct_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pct_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string example(const std::string& extra = "") {
    return write("example.pct", std::string(cli::example_document()) + extra);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SatPrintsExactAndDecimal) {
  const Result r = pct_run({"sat", example(), "--impl", "M1", "--contract", "P1"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, "81/100 (0.81)\n");
}

TEST_F(Cli, SatThreshold) {
  EXPECT_EQ(pct_run({"sat", example(), "--impl", "M1", "--contract", "P1", "--at-least", "9/10"}).code, cli::kExitFailed);
  EXPECT_EQ(pct_run({"sat", example(), "--impl", "M1", "--contract", "P1", "--at-least", "0.81"}).code, cli::kExitOk);
}

TEST_F(Cli, EmptyImplementationHasLevelOne) {
  const std::string file = example("impl E { ports a, f1, x; controls x; behavior false; }\n");
  const Result r = pct_run({"sat", file, "--impl", "E", "--contract", "P1"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, "1 (1.0)\n");
}

TEST_F(Cli, ComposeSaveLoadMatchesTheInMemoryPipeline) {
  const std::string file = example(
      "impl M12 { ports a, f1, f2, x, y; controls x, y;"
      " behavior always(x iff a or f1) and always(y iff x or f2); }\n");
  const std::string out = (dir_ / "composed.pct").string();
  const Result c = pct_run({"compose", file, "--contracts", "P1,P2", "--name", "P12", "--out", out});
  ASSERT_EQ(c.code, cli::kExitOk) << c.err;
  EXPECT_NE(c.out.find("probabilistic ports {f1, f2}"), std::string::npos) << c.out;

  const speclang::Model model = speclang::Model::from_text(cli::example_document());
  const Rational direct = sat_level(compose_implementations(model.implementation("M1"), model.implementation("M2")),
                                    compose_prob(model.prob_contract("P1"), model.prob_contract("P2")))
                              .level;
  const Result s = pct_run({"sat", out, "--impl", "M12", "--contract", "P12"});
  EXPECT_EQ(s.code, cli::kExitOk) << s.err;
  EXPECT_EQ(s.out, format_level(direct) + "\n");
  EXPECT_EQ(s.out, "324/625 (0.5184)\n");
}

TEST_F(Cli, ComposeWithItselfIsAControlledOverlap) {
  const Result r = pct_run({"compose", example(), "--contracts", "C1,C1"});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_NE(r.err.find("controlled-overlap"), std::string::npos) << r.err;
}

TEST_F(Cli, RefineIdenticalContracts) {
  const std::string file = write("k.pct",
                                 "horizon 2; port f : bool prob bernoulli(1/3); port x : bool controlled;"
                                 "contract K { ports f, x; controls x; assume true; guarantee never(f) or always(x); }"
                                 "probcontract PK { contract K; prob f; }");
  const Result r = pct_run({"refine", file, "--from", "PK", "--to", "PK"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("gamma: 1 (1.0)\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("P(good1): 4/9"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("degenerate: no"), std::string::npos);
}

TEST_F(Cli, RefineOfTheExamplePrintsAnExactLevel) {
  const Result r = pct_run({"refine", example(), "--from", "P", "--to", "Pprime"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out,
            "gamma: 0 (0.0)\nP(good1): 199/10000 (0.0199)\nP(good1 and good2): 0 (0.0)\ndegenerate: no\n");
}

TEST_F(Cli, DegenerateConditioningIsAFailure) {
  const Result r = pct_run({"refine", example(), "--from", "P", "--to", "P"});
  EXPECT_EQ(r.code, cli::kExitFailed);
  EXPECT_NE(r.out.find("degenerate: yes"), std::string::npos);
}

TEST_F(Cli, DiagnosticsCarryFileAndLocation) {
  const std::string file = write("bad.pct", "horizon 1;\nport y : bool;\ncontract C { assume true; guarantee always(y == z); }\n");
  const Result r = pct_run({"sat", file, "--impl", "M", "--contract", "C"});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_NE(r.err.find(file + ":3:49: resolution error:"), std::string::npos) << r.err;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(pct_run({}).code, cli::kExitError);
  EXPECT_EQ(pct_run({"sat"}).code, cli::kExitError);
  EXPECT_EQ(pct_run({"frobnicate"}).code, cli::kExitError);
  EXPECT_EQ(pct_run({"sat", (dir_ / "missing.pct").string(), "--impl", "M", "--contract", "C"}).code, cli::kExitError);
  EXPECT_EQ(pct_run({"sat", example(), "--impl", "Nope", "--contract", "P1"}).code, cli::kExitError);
  EXPECT_EQ(pct_run({"--help"}).code, cli::kExitOk);
}

TEST_F(Cli, VerifyIsDeterministic) {
  const Result a = pct_run({"verify", "--seeds", "5"});
  const Result b = pct_run({"verify", "--seeds", "5"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out.rfind("theorem1: 5/5, theorem2: ", 0), 0u) << a.out;
  const Result j = pct_run({"verify", "--seeds", "1", "--json-lines"});
  EXPECT_NE(j.out.find("{\"beta1\":"), std::string::npos);
  EXPECT_EQ(j.out, pct_run({"verify", "--seeds", "1", "--json-lines"}).out);
}

TEST_F(Cli, FmtCheckAndInPlace) {
  const std::string file = write("messy.pct", "horizon 1;   port b : bool;port a : bool;\npredicate p = (a and (b));\n");
  EXPECT_EQ(pct_run({"fmt", file, "--check"}).code, cli::kExitFailed);
  const Result printed = pct_run({"fmt", file});
  EXPECT_EQ(printed.code, cli::kExitOk);
  EXPECT_EQ(printed.out, "horizon 1;\n\nport a : bool;\nport b : bool;\n\npredicate p = a and b;\n");
  EXPECT_EQ(pct_run({"fmt", file, "-i"}).code, cli::kExitOk);
  EXPECT_EQ(pct_run({"fmt", file, "--check"}).code, cli::kExitOk);
}

TEST_F(Cli, ExampleReport) {
  const Result r = pct_run({"example"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("alpha = sat(M1, P1) = 81/100 (0.81)"), std::string::npos);
  EXPECT_EQ(r.out, pct_run({"example"}).out);
  EXPECT_EQ(pct_run({"example", "--source"}).out, std::string(cli::example_document()));
}
