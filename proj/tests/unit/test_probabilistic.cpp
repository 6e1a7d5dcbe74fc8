#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pct/errors.hpp"

using namespace pct;
using namespace pct::test;

namespace {

const Horizon h1(1);
const Horizon h2(2);

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::invalid_argument;
}

ProbContract with_coin(const Contract& c, const std::string& port, const std::string& p = "1/2") {
  return ProbContract(c, {port}, bernoulli_iid(c.signature().port(port), R(p), c.horizon()));
}

}  // namespace

TEST(Bernoulli, Examples) {
  const Port f = Port::boolean("f");
  const Distribution zero = bernoulli_iid(f, 0, h2);
  EXPECT_EQ(zero.weight(run_of({{"f", "FF"}})), 1);
  EXPECT_EQ(zero.weight(run_of({{"f", "TF"}})), 0);
  EXPECT_EQ(bernoulli_iid(f, R("1/10"), h2).weight(run_of({{"f", "FF"}})), R("81/100"));
  EXPECT_EQ(bernoulli_iid(f, R("1/10"), h2).weight(run_of({{"f", "TT"}})), R("1/100"));
  const Distribution half = bernoulli_iid(f, R("1/2"), h1);
  EXPECT_EQ(half.weights(), (std::vector<Rational>{R("1/2"), R("1/2")}));
  EXPECT_EQ(code_of([&] { bernoulli_iid(f, R("3/2"), h1); }), Errc::probability_range);
}

TEST(Distribution, RejectsBadTables) {
  const std::vector<Port> ports{Port::boolean("f")};
  EXPECT_EQ(code_of([&] { Distribution(ports, h1, {R("1/2"), R("1/3")}); }), Errc::not_normalized);
  EXPECT_EQ(code_of([&] { Distribution(ports, h1, {R("3/2"), R("-1/2")}); }), Errc::probability_range);
}

TEST(ProductDist, Examples) {
  const Distribution pm = product_dist(Distribution::point_mass(h2), Distribution::point_mass(h2));
  EXPECT_EQ(pm.outcomes(), 1u);
  const Distribution u = product_dist(bernoulli_iid(Port::boolean("a"), R("1/2"), h1),
                                      bernoulli_iid(Port::boolean("b"), R("1/2"), h1));
  EXPECT_EQ(u.outcomes(), 4u);
  for (const auto& w : u.weights()) EXPECT_EQ(w, R("1/4"));
  const Distribution d = product_dist(bernoulli_iid(Port::boolean("f1"), R("1/10"), h2),
                                      bernoulli_iid(Port::boolean("f2"), R("1/5"), h2));
  EXPECT_EQ(d.weight(run_of({{"f1", "FF"}, {"f2", "FF"}})), R("81/100") * R("16/25"));
  EXPECT_EQ(code_of([&] { product_dist(u, u); }), Errc::prob_port_overlap);
  EXPECT_EQ(code_of([&] { product_dist(u, Distribution::point_mass(h2)); }), Errc::horizon_mismatch);
}

TEST(Marginal, Laws) {
  oracle::Rng rng(3);
  const Distribution d1 = oracle::random_distribution(rng, {Port::boolean("a"), Port("m", {"0", "1", "2"})}, h2);
  const Distribution d2 = oracle::random_distribution(rng, {Port::boolean("b")}, h2);
  EXPECT_EQ(marginal(d1, d1.port_names()), d1);
  EXPECT_EQ(marginal(product_dist(d1, d2), d1.port_names()), d1);
  const Distribution u = product_dist(bernoulli_iid(Port::boolean("a"), R("1/2"), h2),
                                      bernoulli_iid(Port::boolean("b"), R("1/2"), h2));
  const Distribution mb = marginal(u, {"b"});
  for (const auto& w : mb.weights()) EXPECT_EQ(w, R("1/4"));
  EXPECT_EQ(code_of([&] { marginal(u, {"z"}); }), Errc::signature_mismatch);
}

TEST(SatLevel, TrivialCases) {
  const Signature sig = bools({"f", "x"}, {"x"});
  const ProbContract pc = with_coin(Contract::trivial(sig, h2), "f", "1/10");
  EXPECT_EQ(sat_level(universe(sig, h2), pc).level, 1);
  const Contract nothing = Contract::make(sig, universe(sig, h2), Assertion::empty(sig, h2));
  EXPECT_EQ(sat_level(Assertion::empty(sig, h2), with_coin(nothing, "f")).level, 1);
  EXPECT_EQ(sat_level(universe(sig, h2), with_coin(nothing, "f")).level, 0);
}

TEST(SatLevel, StuckAtFailureGivesNeverFailureProbability) {
  // x = a or f; guarantee never(not a and x): good exactly when f never fires.
  const Signature sig = bools({"a", "f", "x"}, {"x"});
  const Implementation m = where(sig, h2, [](const pct::Run& r) {
    for (int t = 0; t < 2; ++t)
      if (r.histories.at("x")[t] != (r.histories.at("a")[t] | r.histories.at("f")[t])) return false;
    return true;
  });
  const Assertion g = where(sig, h2, [](const pct::Run& r) {
    for (int t = 0; t < 2; ++t)
      if (!r.histories.at("a")[t] && r.histories.at("x")[t]) return false;
    return true;
  });
  const auto rep = sat_level(m, with_coin(Contract::make(sig, universe(sig, h2), g), "f", "1/10"));
  EXPECT_EQ(rep.level, R("81/100"));
  ASSERT_TRUE(rep.witness_bad.has_value());
}

TEST(SatLevel, RoleErrors) {
  const Signature sig = bools({"f", "x"}, {"x"});
  const ProbContract pc = with_coin(Contract::trivial(sig, h1), "f");
  EXPECT_EQ(code_of([&] { sat_level(universe(bools({"f", "x"}), h1), pc); }), Errc::port_role_mismatch);
  EXPECT_EQ(code_of([&] { sat_level(universe(bools({"f", "x"}, {"f", "x"}), h1), pc); }), Errc::port_role_mismatch);
  EXPECT_EQ(code_of([&] { ProbContract(Contract::trivial(sig, h1), {"x"}, bernoulli_iid(Port::boolean("x"), 0, h1)); }),
            Errc::port_role_mismatch);
}

TEST(ComposeProb, ProductOfDistributionsAndErrors) {
  const ProbContract p1 = with_coin(Contract::trivial(bools({"f1", "x"}, {"x"}), h2), "f1", "1/10");
  const ProbContract p2 = with_coin(Contract::trivial(bools({"f2", "x", "y"}, {"y"}), h2), "f2", "1/5");
  const ProbContract c = compose_prob(p1, p2);
  EXPECT_EQ(c.pports(), (std::vector<std::string>{"f1", "f2"}));
  EXPECT_EQ(c.dist(), product_dist(p1.dist(), p2.dist()));

  const ProbContract det = ProbContract::deterministic(Contract::trivial(bools({"y", "z"}, {"z"}), h2));
  EXPECT_EQ(compose_prob(p1, det).dist(), p1.dist());

  const ProbContract pz = with_coin(Contract::trivial(bools({"z"}), h2), "z");
  EXPECT_EQ(code_of([&] { compose_prob(pz, det); }), Errc::prob_port_controlled);
  EXPECT_EQ(code_of([&] { compose_prob(p1, with_coin(Contract::trivial(bools({"f1"}), h2), "f1")); }),
            Errc::prob_port_overlap);
}

TEST(Wrap, GuaranteeHasOneOutputPerSourceChoice) {
  const ProbContract pc = with_coin(Contract::trivial(bools({"x", "y"}, {"y"}), h1), "x");
  const Wrapped w = wrap("x", pc);
  const Signature& ws = w.wrapper.signature();
  EXPECT_EQ(ws.names(), (std::vector<std::string>{"x", "x_c", "x_p", "x_s"}));
  EXPECT_EQ(ws.controlled_names(), (std::vector<std::string>{"x"}));
  EXPECT_EQ(universe(ws, h1).count(), 16u);
  EXPECT_EQ(w.wrapper.guarantee().count(), 8u);
  EXPECT_EQ(w.contract.pports(), (std::vector<std::string>{"x_p"}));
  EXPECT_FALSE(w.contract.signature().is_controlled("x"));
  EXPECT_EQ(code_of([&] { wrap("y", pc); }), Errc::invalid_argument);
}

TEST(Wrap, SelectorStuckOnTheRandomSourceCopiesIt) {
  const ProbContract pc = with_coin(Contract::trivial(bools({"x"}), h2), "x");
  const Wrapped w = wrap("x", pc);
  const Signature& ws = w.wrapper.signature();
  const Assertion pick_p = where(ws, h2, [](const pct::Run& r) {
    for (auto v : r.histories.at("x_s"))
      if (v != 0) return false;
    return true;
  });
  const Signature out = ws.restricted_to({"x", "x_p"});
  const Assertion seen = project(w.wrapper.guarantee() & pick_p, out);
  EXPECT_EQ(seen, where(out, h2, [](const pct::Run& r) { return r.histories.at("x") == r.histories.at("x_p"); }));
}

TEST(Wrap, ControlledAndRandomSourcesComposeOnlyAfterWrapping) {
  // Component 1 drives x; component 2 models x as a random input.
  const ProbContract drive = ProbContract::deterministic(Contract::trivial(bools({"a", "x"}, {"x"}), h2));
  const ProbContract consume = with_coin(Contract::trivial(bools({"x", "y"}, {"y"}), h2), "x", "1/10");
  EXPECT_EQ(code_of([&] { compose_prob(drive, consume); }), Errc::prob_port_controlled);

  const Wrapped w = wrap("x", consume);
  const ProbContract right = compose_prob(w.contract, ProbContract::deterministic(w.wrapper));
  const ProbContract all = compose_prob(rename_port(drive, "x", "x_c"), right);
  EXPECT_EQ(all.pports(), (std::vector<std::string>{"x_p"}));
  EXPECT_EQ(all.signature().controlled_names(), (std::vector<std::string>{"x", "x_c", "y"}));
}

TEST(RefineLevel, TrivialCasesAndDegeneracy) {
  oracle::Rng rng(21);
  const Signature sig = bools({"f", "x"}, {"x"});
  const Contract c = Contract::make(sig, universe(sig, h2), random_assertion(rng, sig, h2) | where(sig, h2, [](const pct::Run& r) {
                                      return r.histories.at("f") == History{0, 0};
                                    }));
  const ProbContract pc = with_coin(c, "f");
  const auto self = refine_level(pc, pc);
  ASSERT_FALSE(self.degenerate());
  EXPECT_EQ(*self.level, 1);
  EXPECT_EQ(*refine_level(pc, with_coin(Contract::trivial(sig, h2), "f")).level, 1);

  const ProbContract empty = with_coin(Contract::make(sig, universe(sig, h2), Assertion::empty(sig, h2)), "f");
  const auto d = refine_level(empty, pc);
  EXPECT_TRUE(d.degenerate());
  EXPECT_EQ(d.p_good1, 0);
}

TEST(RefineLevel, Errors) {
  const ProbContract p1 = with_coin(Contract::trivial(bools({"f", "x"}, {"x"}), h1), "f", "1/2");
  const ProbContract p2 = with_coin(Contract::trivial(bools({"f", "x"}, {"x"}), h1), "f", "1/3");
  EXPECT_EQ(code_of([&] { refine_level(p1, p2); }), Errc::marginal_mismatch);
  const ProbContract small = with_coin(Contract::trivial(bools({"f"}), h1), "f");
  EXPECT_EQ(code_of([&] { refine_level(p1, small); }), Errc::signature_mismatch);
}

// Refinement level 1 and full satisfaction of C1, yet M only meets C2 half
// the time: the product bound fails when good sets and M's sections are
// correlated.
TEST(RefineLevel, ProductBoundCounterexample) {
  const Signature sig = bools({"f", "x"}, {"x"});
  const Assertion g1 = where(sig, h1, [](const pct::Run& r) { return r.histories.at("f")[0] == 0 || r.histories.at("x")[0] == 0; });
  const Assertion g2 = where(sig, h1, [](const pct::Run& r) { return r.histories.at("f")[0] == 0 || r.histories.at("x")[0] == 1; });
  const ProbContract c1 = with_coin(Contract::make(sig, universe(sig, h1), g1), "f");
  const ProbContract c2 = with_coin(Contract::make(sig, universe(sig, h1), g2), "f");
  const Implementation m = Assertion::from_runs(bools({"x"}, {"x"}), h1, {run_of({{"x", "F"}})});
  EXPECT_EQ(sat_level(m, c1).level, 1);
  EXPECT_EQ(*refine_level(c1, c2).level, 1);
  EXPECT_EQ(sat_level(m, c2).level, R("1/2"));
}

// ---------------------------------------------------------------------------

class ProbLaws : public ::testing::TestWithParam<int> {};

TEST_P(ProbLaws, MonotoneInGuaranteeAntitoneInImplementation) {
  oracle::Rng rng(static_cast<std::uint64_t>(GetParam()) + 777);
  const Horizon h(rng.between(1, 2));
  const Signature sig = bools({"a", "f", "x"}, {"x"});
  const Distribution d = oracle::random_distribution(rng, {Port::boolean("f")}, h);
  const Assertion a = random_assertion(rng, sig, h);
  const Assertion g = random_assertion(rng, sig, h);
  const Assertion g_big = g | random_assertion(rng, sig, h);
  const Implementation m = random_assertion(rng, sig, h);
  const Implementation m_small = m & random_assertion(rng, sig, h);
  const ProbContract pc(Contract::make(sig, a, g), {"f"}, d);
  const ProbContract pc_big(Contract::make(sig, a, g_big), {"f"}, d);
  const Rational base = sat_level(m, pc).level;
  EXPECT_LE(base, sat_level(m, pc_big).level);
  EXPECT_LE(base, sat_level(m_small, pc).level);
  EXPECT_GE(base, 0);
  EXPECT_LE(base, 1);
}

TEST_P(ProbLaws, FullLevelUnderFullSupportIsSatisfaction) {
  oracle::Rng rng(static_cast<std::uint64_t>(GetParam()) + 4242);
  const Horizon h(rng.between(1, 2));
  const Signature sig = bools({"f", "x"}, {"x"});
  const Contract c = Contract::make(sig, random_assertion(rng, sig, h), random_assertion(rng, sig, h));
  const Implementation m = rng.chance(1, 2) ? maximal_implementation(c) & random_assertion(rng, sig, h)
                                            : random_assertion(rng, sig, h);
  const ProbContract pc = with_coin(c, "f");
  EXPECT_EQ(satisfies(m, c), sat_level(m, pc).level == 1);
  // A deterministic contract has level 1 or 0.
  EXPECT_EQ(sat_level(m, ProbContract::deterministic(c)).level, satisfies(m, c) ? 1 : 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ProbLaws, ::testing::Range(0, 100));
