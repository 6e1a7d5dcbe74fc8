#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pct/cli.hpp"
#include "pct/errors.hpp"
#include "pct/oracle/oracle.hpp"
#include "pct/oracle/suites.hpp"
#include "pct/speclang/model.hpp"

using namespace pct;
using namespace pct::oracle;
using namespace pct::test;

namespace {

void expect_same(const ProbContract& a, const ProbContract& b) {
  EXPECT_EQ(a.base(), b.base());
  EXPECT_EQ(a.pports(), b.pports());
  EXPECT_EQ(a.dist(), b.dist());
}

}  // namespace

TEST(Generator, SameSeedSameInstance) {
  const Budget budget;
  for (std::uint64_t seed : {0u, 17u, 4242u}) {
    const Instance a = gen_instance(seed, budget);
    const Instance b = gen_instance(seed, budget);
    EXPECT_EQ(a.m1, b.m1);
    EXPECT_EQ(a.m2, b.m2);
    expect_same(a.pc1, b.pc1);
    expect_same(a.pc2, b.pc2);
    const RefinementInstance r = gen_refinement(seed, budget);
    const RefinementInstance s = gen_refinement(seed, budget);
    EXPECT_EQ(r.m, s.m);
    expect_same(r.pc1, s.pc1);
    expect_same(r.pc2, s.pc2);
  }
}

TEST(Generator, FiveHundredComposableInstances) {
  const Audit audit = audit_generator(0, 500, Budget{});
  EXPECT_EQ(audit.generated, 500u);
  EXPECT_EQ(audit.rejected, 0u);
}

TEST(Generator, StaysWithinTheBudget) {
  const Budget budget;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance in = gen_instance(seed, budget);
    EXPECT_LE(in.pc1.pports().size(), 2u);
    EXPECT_LE(in.pc2.pports().size(), 2u);
    EXPECT_LE(in.pc1.base().horizon().steps(), 3);
    const Signature joint = composition_signature(in.pc1.signature(), in.pc2.signature());
    EXPECT_LE(RunSpace(joint, in.pc1.base().horizon()).size(), budget.universe_cap);
    for (const Port& p : joint.ports()) EXPECT_LE(p.size(), 3u);
  }
}

TEST(Generator, DegenerateBudgetGivesMinimalValidInstances) {
  const Budget tiny = Budget::parse("ports=0,prob=0,h=1,domain=1");
  EXPECT_EQ(tiny.ports, 0);
  EXPECT_EQ(tiny.prob_ports, 0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance in = gen_instance(seed, tiny);
    EXPECT_NO_THROW(compose_prob(in.pc1, in.pc2));
    EXPECT_NO_THROW(sat_level(compose_implementations(in.m1, in.m2), compose_prob(in.pc1, in.pc2)));
  }
  EXPECT_EQ(audit_generator(0, 50, tiny).rejected, 0u);
}

TEST(Generator, DisjointInstancesShareNoPort) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance in = gen_instance(seed, Budget{}, true);
    for (const auto& n : in.pc1.signature().names()) EXPECT_FALSE(in.pc2.signature().contains(n)) << seed;
  }
}

TEST(Generator, RefinementPreconditionsHold) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RefinementInstance r = gen_refinement(seed, Budget{}, seed % 2 == 0);
    const RefineReport rep = refine_level(r.pc1, r.pc2);
    EXPECT_FALSE(rep.degenerate()) << seed;
    EXPECT_EQ(marginal(r.pc2.dist(), r.pc1.pports()), r.pc1.dist());
  }
}

TEST(Budget, ParseAndDescribe) {
  const Budget b = Budget::parse("h=2,ports=1,cap=100");
  EXPECT_EQ(b.max_horizon, 2);
  EXPECT_EQ(b.ports, 1);
  EXPECT_EQ(b.universe_cap, 100u);
  EXPECT_EQ(Budget::parse(b.describe()).describe(), b.describe());
  EXPECT_THROW(Budget::parse("colour=3"), Error);
}

TEST(Oracle, UniverseContractHasLevelOne) {
  const Signature sig = bools({"f", "x"}, {"x"});
  const ProbContract pc(Contract::trivial(sig, Horizon(2)), {"f"}, bernoulli_iid(Port::boolean("f"), R("1/3"), Horizon(2)));
  EXPECT_EQ(oracle_sat_level(from_assertion(universe(sig, Horizon(2))), pc), 1);
}

TEST(Oracle, DecodesRunsLikeTheEngine) {
  const Signature sig({Port("m", {"u", "v", "w"}), Port::boolean("a")});
  const Assertion e = Assertion::from_indices(sig, Horizon(2), {0, 5, 35});
  const RunTable t = from_assertion(e);
  EXPECT_EQ(t.runs.size(), 3u);
  EXPECT_TRUE(same_runs(e, t.runs, t.space));
  const auto all = all_runs(t.space);
  EXPECT_EQ(all.size(), 36u);
  // Index 5 = a0 1, a1 0, m0 1: flat order is a's steps then m's steps.
  EXPECT_EQ(all[5], (Flat{1, 0, 1, 0}));
}

// Frozen from the two-component example: computed by both routes here, and
// by the stand-alone brute force in tests/oracle_scripts.
TEST(Oracle, AgreesWithTheEngineOnTheExample) {
  const speclang::Model model = speclang::Model::from_text(cli::example_document());
  const Implementation m1 = model.implementation("M1");
  const Implementation m2 = model.implementation("M2");
  const ProbContract p1 = model.prob_contract("P1");
  const ProbContract p2 = model.prob_contract("P2");
  EXPECT_EQ(oracle_sat_level(from_assertion(m1), p1), R("81/100"));
  EXPECT_EQ(sat_level(m1, p1).level, R("81/100"));
  EXPECT_EQ(oracle_sat_level(from_assertion(m2), p2), R("16/25"));
  EXPECT_EQ(sat_level(m2, p2).level, R("16/25"));

  const Implementation m = compose_implementations(m1, m2);
  const ProbContract composed = compose_prob(p1, p2);
  EXPECT_EQ(oracle_sat_level(from_assertion(m), composed), R("324/625"));
  EXPECT_EQ(sat_level(m, composed).level, R("324/625"));

  const RefineLevel o = oracle_refine_level(model.prob_contract("P"), model.prob_contract("Pprime"));
  const RefineReport e = refine_level(model.prob_contract("P"), model.prob_contract("Pprime"));
  EXPECT_EQ(o.p_good1, R("199/10000"));
  EXPECT_EQ(e.p_good1, o.p_good1);
  ASSERT_TRUE(o.level && e.level);
  EXPECT_EQ(*o.level, 0);
  EXPECT_EQ(*e.level, 0);

  const ContractTable ct = oracle_compose(model.contract("C1"), model.contract("C2"));
  const Contract c = compose(model.contract("C1"), model.contract("C2"));
  EXPECT_TRUE(same_runs(c.assumption(), ct.assumption, ct.space));
  EXPECT_TRUE(same_runs(c.guarantee(), ct.guarantee, ct.space));
}

TEST(Suites, ShortRunIsDeterministicAndAgrees) {
  SuiteOptions opt;
  opt.seeds = 20;
  std::vector<std::string> first, second;
  opt.sink = [&](const Record& r) { first.push_back(r.suite + std::to_string(r.seed) + (r.pass ? "+" : "-")); };
  const VerifyReport a = verify(opt);
  opt.sink = [&](const Record& r) { second.push_back(r.suite + std::to_string(r.seed) + (r.pass ? "+" : "-")); };
  const VerifyReport b = verify(opt);
  EXPECT_EQ(first, second);
  EXPECT_GT(a.oracle_checks(), 0u);
  EXPECT_EQ(a.oracle_mismatches(), 0u);
  EXPECT_EQ(a.suite("theorem1").passed, b.suite("theorem1").passed);
  EXPECT_TRUE(a.suite("lemma1").ok());
  EXPECT_TRUE(a.suite("formulas").ok());
}
