#include "pct/oracle/suites.hpp"

#include <algorithm>

#include "pct/errors.hpp"
#include "pct/oracle/oracle.hpp"

namespace pct::oracle {

namespace {

// Bookkeeping shared by the suites.
class Tally {
 public:
  Tally(std::string name, const SuiteOptions& opt) : opt_(opt) { result_.name = std::move(name); }

  void agree(std::uint64_t seed, bool same) {
    ++result_.oracle_checks;
    if (!same && !result_.first_mismatch) result_.first_mismatch = seed;
    if (!same) ++result_.oracle_mismatches;
    record_.pass = record_.pass && same;
  }

  void field(const std::string& key, const std::string& value) { record_.fields.emplace_back(key, value); }
  void field(const std::string& key, const Rational& value) { field(key, to_string(value)); }

  void outcome(std::uint64_t seed, bool holds, const std::string& detail = {}) {
    ++result_.total;
    if (holds) ++result_.passed;
    if (!holds && !result_.first_failure) {
      result_.first_failure = seed;
      result_.first_failure_detail = detail;
    }
    record_.pass = record_.pass && holds;
    flush(seed);
  }

  void skip(std::uint64_t seed) {
    ++result_.skipped;
    record_.fields.emplace_back("skipped", "true");
    flush(seed);
  }

  SuiteResult done() { return std::move(result_); }

 private:
  void flush(std::uint64_t seed) {
    record_.suite = result_.name;
    record_.seed = seed;
    if (opt_.sink) opt_.sink(record_);
    record_ = Record{};
  }

  const SuiteOptions& opt_;
  SuiteResult result_;
  Record record_;
};

struct Levels {
  Rational beta1, beta2, composed;
};

// Engine and oracle levels for the composition of one instance.
struct Compared {
  Levels engine, oracle;
};

Compared theorem1_levels(const Instance& inst) {
  const ProbContract pc = compose_prob(inst.pc1, inst.pc2);
  const Implementation m = compose_implementations(inst.m1, inst.m2);
  Compared c;
  c.engine = {sat_level(inst.m1, inst.pc1).level, sat_level(inst.m2, inst.pc2).level, sat_level(m, pc).level};
  const RunTable o1 = from_assertion(inst.m1), o2 = from_assertion(inst.m2);
  c.oracle = {oracle_sat_level(o1, inst.pc1), oracle_sat_level(o2, inst.pc2),
              oracle_sat_level(oracle_product(o1, o2), pc)};
  return c;
}

bool same_levels(const Levels& a, const Levels& b) {
  return a.beta1 == b.beta1 && a.beta2 == b.beta2 && a.composed == b.composed;
}

void level_fields(Tally& t, const Levels& l) {
  t.field("beta1", l.beta1);
  t.field("beta2", l.beta2);
  t.field("composed", l.composed);
  t.field("bound", l.beta1 * l.beta2);
}

SuiteResult theorem1_suite(const SuiteOptions& opt, bool disjoint) {
  Tally t(disjoint ? "theorem1-tightness" : "theorem1", opt);
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    const Instance inst = gen_instance(s, opt.budget, disjoint);
    const Compared c = theorem1_levels(inst);
    t.agree(s, same_levels(c.engine, c.oracle));
    level_fields(t, c.engine);
    auto check = [&](const Levels& l) {
      return disjoint ? l.composed == l.beta1 * l.beta2 : l.composed >= l.beta1 * l.beta2;
    };
    const bool holds = check(c.engine) && check(c.oracle);
    t.field("bound_check", holds ? "pass" : "fail");
    t.outcome(s, holds,
              "composed " + to_string(c.engine.composed) + (disjoint ? " != " : " < ") +
                  to_string(c.engine.beta1) + " * " + to_string(c.engine.beta2));
  }
  return t.done();
}

// Engine and oracle quantities of one refinement instance.
struct RefineCompared {
  SatReport s1, s2;
  RefineReport engine;
  Rational o1, o2;
  RefineLevel oracle;
};

RefineCompared refine_levels(const RefinementInstance& inst) {
  RefineCompared r{sat_level(inst.m, inst.pc1), sat_level(inst.m, inst.pc2), refine_level(inst.pc1, inst.pc2),
                   0, 0, {}};
  const RunTable m = from_assertion(inst.m);
  r.o1 = oracle_sat_level(m, inst.pc1);
  r.o2 = oracle_sat_level(m, inst.pc2);
  r.oracle = oracle_refine_level(inst.pc1, inst.pc2);
  return r;
}

bool same_refine(const RefineCompared& r) {
  return r.s1.level == r.o1 && r.s2.level == r.o2 && r.engine.level == r.oracle.level &&
         r.engine.p_good1 == r.oracle.p_good1 && r.engine.p_good_both == r.oracle.p_good_both;
}

// Whether one more boolean port keeps the universe over `sig` within `cap`.
bool room_for_port(const Signature& sig, Horizon h, std::uint64_t cap) {
  return RunSpace(sig, h, cap).size() * (std::uint64_t{1} << h.steps()) <= cap;
}

// A contract C2 with C1 refining C2: optionally one more input port, a
// smaller assumption and a larger canonical guarantee.
Contract weaken(Rng& rng, const Contract& c1, const std::string& fresh, std::uint64_t cap) {
  Signature sig = c1.signature();
  if (!fresh.empty()) {
    std::vector<Port> ports = sig.ports();
    ports.push_back(Port::boolean(fresh));
    sig = Signature(ports, sig.controlled_names());
  }
  const Assertion a1 = align(c1.assumption(), sig);
  const Assertion g1 = align(maximal_implementation(c1), sig);
  RunSet drop(a1.runs().size()), add(g1.runs().size());
  for (std::size_t i = 0; i < drop.size(); ++i) {
    if (rng.chance(1, 4)) drop.set(i);
    if (rng.chance(1, 4)) add.set(i);
  }
  const Assertion a2 = a1 - Assertion(sig, c1.horizon(), drop, cap);
  const Assertion g2 = g1 | Assertion(sig, c1.horizon(), add, cap);
  return Contract::make(sig, a2, g2);
}

// An implementation over the contract's signature that satisfies it.
Implementation satisfying(const Implementation& m, const Contract& c) {
  return align(m, c.signature()) & maximal_implementation(c);
}

bool oracle_satisfies(const Implementation& m, const Contract& c) { return oracle_satisfies(from_assertion(m), c); }

}  // namespace

SuiteResult theorem1(const SuiteOptions& opt) { return theorem1_suite(opt, false); }
SuiteResult theorem1_tightness(const SuiteOptions& opt) { return theorem1_suite(opt, true); }

SuiteResult theorem2(const SuiteOptions& opt) {
  Tally t("theorem2", opt);
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    const RefinementInstance inst = gen_refinement(s, opt.budget);
    const RefineCompared r = refine_levels(inst);
    t.agree(s, same_refine(r));
    t.field("beta1", r.s1.level);
    t.field("beta2", r.s2.level);
    t.field("p_good1", r.engine.p_good1);
    if (r.engine.degenerate() || !r.oracle.level) {
      t.skip(s);
      continue;
    }
    t.field("gamma", *r.engine.level);
    t.field("bound", r.s1.level * *r.engine.level);
    const bool holds = r.s2.level >= r.s1.level * *r.engine.level && r.o2 >= r.o1 * *r.oracle.level;
    t.field("bound_check", holds ? "pass" : "fail");
    t.outcome(s, holds,
              "sat(M, C2) = " + to_string(r.s2.level) + " < " + to_string(r.s1.level) + " * " +
                  to_string(*r.engine.level));
  }
  return t.done();
}

SuiteResult theorem2_tightness(const SuiteOptions& opt) {
  Tally t("theorem2-tightness", opt);
  std::size_t equal = 0, evaluated = 0;
  std::optional<std::uint64_t> witness;
  SuiteOptions quiet = opt;
  quiet.sink = {};
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    const RefinementInstance inst = gen_refinement(s, opt.budget, true);
    const RefineCompared r = refine_levels(inst);
    t.agree(s, same_refine(r));
    if (r.engine.degenerate()) continue;
    ++evaluated;
    if (r.s2.level == r.s1.level * *r.engine.level) {
      ++equal;
      if (!witness) witness = s;
    }
  }
  t.field("equalities", std::to_string(equal) + "/" + std::to_string(evaluated));
  if (witness) t.field("witness_seed", std::to_string(*witness));
  t.outcome(witness.value_or(opt.first_seed), equal > 0, "no instance reached equality");
  return t.done();
}

SuiteResult lemma1(const SuiteOptions& opt) {
  Tally t("lemma1", opt);
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    const Instance inst = gen_instance(s, opt.budget);
    const Contract& c1 = inst.pc1.base();
    const Contract& c2 = inst.pc2.base();
    const Implementation m1 = satisfying(inst.m1, c1), m2 = satisfying(inst.m2, c2);
    const Implementation m = compose_implementations(m1, m2);
    const Contract c = compose(c1, c2);
    const bool premise = satisfies(m1, c1) && satisfies(m2, c2);
    const bool engine = satisfies(m, c);
    const bool oracle_premise = oracle_satisfies(m1, c1) && oracle_satisfies(m2, c2);
    const bool oracle = oracle_satisfies(oracle_product(from_assertion(m1), from_assertion(m2)), c);
    t.agree(s, premise == oracle_premise && engine == oracle);
    const bool holds = (!premise || engine) && (!oracle_premise || oracle) && premise;
    t.outcome(s, holds, premise ? "M1 x M2 does not satisfy C1 || C2" : "constructed M_i do not satisfy C_i");
  }
  return t.done();
}

SuiteResult lemma2(const SuiteOptions& opt) {
  Tally t("lemma2", opt);
  const std::uint64_t cap = opt.budget.universe_cap;
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    Rng rng(s * 0x94D049BB133111EBull + 3);

    // Item 1: M |= C1 and C1 refines C2 give M |= C2.
    const RefinementInstance ri = gen_refinement(s, opt.budget);
    const Contract& c1 = ri.pc1.base();
    const Contract c2 = weaken(rng, c1, room_for_port(c1.signature(), c1.horizon(), cap) ? "w" : "", cap);
    const Implementation m = satisfying(ri.m, c1);
    const bool refined = refines(c1, c2);
    t.agree(s, refined == oracle_refines(c1, c2));
    const bool item1 = refined && satisfies(m, c1) && satisfies(m, c2) && oracle_satisfies(m, c2);
    t.agree(s, satisfies(m, c2) == oracle_satisfies(m, c2));

    // Item 2: refinement is compositional.
    const Instance inst = gen_instance(s, opt.budget);
    const Contract& k1 = inst.pc1.base();
    const Contract& k3 = inst.pc2.base();
    // Fresh ports only while the composed universe stays within the cap.
    const Signature joint = composition_signature(k1.signature(), k3.signature());
    const bool widen1 = room_for_port(joint, k1.horizon(), cap);
    std::vector<Port> wider = joint.ports();
    wider.push_back(Port::boolean("w1"));
    const bool widen3 = widen1 && room_for_port(Signature(wider), k1.horizon(), cap);
    const Contract k2 = weaken(rng, k1, widen1 ? "w1" : "", cap);
    const Contract k4 = weaken(rng, k3, widen3 ? "w3" : "", cap);
    const bool premises = refines(k1, k2) && refines(k3, k4);
    const Contract left = compose(k1, k3), right = compose(k2, k4);
    const bool engine = refines(left, right);
    t.agree(s, engine == oracle_refines(left, right));
    const bool item2 = premises && engine;

    t.field("item1", item1 ? "pass" : "fail");
    t.field("item2", item2 ? "pass" : "fail");
    t.outcome(s, item1 && item2, !item1 ? "refinement did not preserve satisfaction" : "refinement not compositional");
  }
  return t.done();
}

SuiteResult formulas(const SuiteOptions& opt) {
  Tally t("formulas", opt);
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    const Instance inst = gen_instance(s, opt.budget);
    const Contract c = compose(inst.pc1.base(), inst.pc2.base());
    const Implementation m = compose_implementations(inst.m1, inst.m2);
    const std::vector<std::pair<Implementation, const Contract*>> cases = {
        {inst.m1, &inst.pc1.base()},
        {inst.m2, &inst.pc2.base()},
        {m, &c},
        {satisfying(inst.m1, inst.pc1.base()), &inst.pc1.base()},
    };
    bool holds = true;
    for (const auto& [impl, contract] : cases) {
      const SatisfactionFormulas f = satisfaction_formulas(impl, *contract);
      holds = holds && f.agree();
      t.agree(s, f.guarded_inclusion == oracle_satisfies(impl, *contract));
    }
    t.outcome(s, holds, "satisfaction formulas disagree");
  }
  return t.done();
}

SuiteResult canonical_form(const SuiteOptions& opt) {
  Tally t("canonical-form", opt);
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    const Instance inst = gen_instance(s, opt.budget);
    bool holds = true;
    std::string detail;
    for (const auto& [m, pc] : {std::pair{&inst.m1, &inst.pc1}, std::pair{&inst.m2, &inst.pc2}}) {
      // Rebuild a raw contract from the stored (canonical) one, with the
      // original assumption and a shrunken guarantee, so canonicalize has work.
      const Contract& base = pc->base();
      const Contract raw = Contract::make(base.signature(), base.assumption(),
                                          base.guarantee() & base.assumption());
      const Contract once = canonicalize(raw);
      const Contract twice = canonicalize(once);
      const Assertion mc = maximal_implementation(raw);
      const Signature sig = overlay(raw.signature(), m->signature());
      const bool sat_raw = satisfies(*m, raw), sat_canon = satisfies(*m, once);
      const bool within = included_in(align(*m, sig), align(mc, sig), sig);
      if (!(once == twice)) detail = "canonicalize is not idempotent";
      else if (!(sat_raw == sat_canon && sat_canon == within)) detail = "satisfaction changed by canonicalize";
      else if (!once.in_canonical_form()) detail = "canonicalize output not canonical";
      holds = holds && detail.empty();
      t.agree(s, sat_raw == oracle_satisfies(*m, raw));
    }
    const Contract c = compose(inst.pc1.base(), inst.pc2.base());
    if (!c.in_canonical_form() && detail.empty()) detail = "composition not canonical";
    holds = holds && detail.empty();
    t.outcome(s, holds, detail);
  }
  return t.done();
}

SuiteResult oracle_agreement(const SuiteOptions& opt) {
  Tally t("oracle-agreement", opt);
  for (std::uint64_t s = opt.first_seed; s < opt.first_seed + opt.seeds; ++s) {
    const Instance inst = gen_instance(s, opt.budget);
    const Compared c = theorem1_levels(inst);
    t.agree(s, same_levels(c.engine, c.oracle));

    const Contract composed = compose(inst.pc1.base(), inst.pc2.base());
    const ContractTable oc = oracle_compose(inst.pc1.base(), inst.pc2.base());
    t.agree(s, same_runs(composed.assumption(), oc.assumption, oc.space) &&
                   same_runs(composed.guarantee(), oc.guarantee, oc.space));

    const RunTable prod = oracle_product(from_assertion(inst.m1), from_assertion(inst.m2));
    t.agree(s, same_runs(from_assertion(compose_implementations(inst.m1, inst.m2)), prod));

    t.agree(s, satisfies(inst.m1, inst.pc1.base()) == oracle_satisfies(inst.m1, inst.pc1.base()));
    t.agree(s, satisfies(inst.m2, inst.pc2.base()) == oracle_satisfies(inst.m2, inst.pc2.base()));

    const RefinementInstance ri = gen_refinement(s, opt.budget);
    t.agree(s, same_refine(refine_levels(ri)));
    t.agree(s, refines(ri.pc1.base(), ri.pc2.base()) == oracle_refines(ri.pc1.base(), ri.pc2.base()));
    t.agree(s, refines(ri.pc1.base(), ri.pc1.base()) == oracle_refines(ri.pc1.base(), ri.pc1.base()));

    level_fields(t, c.engine);
    t.outcome(s, true);
  }
  return t.done();
}

const SuiteResult& VerifyReport::suite(const std::string& name) const {
  auto it = std::find_if(suites.begin(), suites.end(), [&](const SuiteResult& r) { return r.name == name; });
  if (it == suites.end()) throw Error(Errc::invalid_argument, "no suite named '" + name + "'");
  return *it;
}

std::size_t VerifyReport::oracle_checks() const {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.oracle_checks;
  return n;
}

std::size_t VerifyReport::oracle_mismatches() const {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.oracle_mismatches;
  return n;
}

bool VerifyReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

VerifyReport verify(const SuiteOptions& opt) {
  VerifyReport r;
  r.suites.push_back(theorem1(opt));
  r.suites.push_back(theorem1_tightness(opt));
  r.suites.push_back(theorem2(opt));
  r.suites.push_back(theorem2_tightness(opt));
  r.suites.push_back(lemma1(opt));
  r.suites.push_back(lemma2(opt));
  r.suites.push_back(formulas(opt));
  r.suites.push_back(canonical_form(opt));
  r.suites.push_back(oracle_agreement(opt));
  return r;
}

}  // namespace pct::oracle
