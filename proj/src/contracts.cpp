#include "pct/contracts.hpp"

#include <algorithm>
#include <cassert>

#include "pct/errors.hpp"

namespace pct {

Contract Contract::make(Signature sig, const Assertion& assumption, const Assertion& guarantee) {
  if (!(assumption.horizon() == guarantee.horizon()))
    throw Error(Errc::horizon_mismatch, "assumption and guarantee use different horizons");
  Assertion a = align(assumption, sig);
  Assertion g = align(guarantee, sig);
  return Contract(std::move(sig), std::move(a), std::move(g), false);
}

Contract Contract::trivial(Signature sig, Horizon horizon, std::uint64_t cap) {
  Assertion top = universe(sig, horizon, cap);
  return Contract(std::move(sig), top, top, true);
}

bool Contract::in_canonical_form() const {
  return is_subset(complement(assumption_), guarantee_);
}

Contract canonicalize(const Contract& c) {
  if (c.canonical_) return c;
  Assertion g = c.guarantee_ | complement(c.assumption_);
  return Contract(c.sig_, c.assumption_, std::move(g), true);
}

Assertion maximal_implementation(const Contract& c) {
  return c.guarantee() | complement(c.assumption());
}

SatisfactionFormulas satisfaction_formulas(const Implementation& m, const Contract& c) {
  const Signature sig = overlay(c.signature(), m.signature());
  const Assertion lm = align(m, sig);
  const Assertion la = lift(c.assumption(), sig);
  const Assertion lg = lift(c.guarantee(), sig);

  SatisfactionFormulas out{};
  out.guarded_inclusion = included_in(lm & la, lg, sig);
  out.maximal_inclusion = is_subset(lm, lg | complement(la));
  out.empty_violation = (lm & (la & complement(lg))).is_empty();
  return out;
}

bool satisfies(const Implementation& m, const Contract& c) {
  const SatisfactionFormulas f = satisfaction_formulas(m, c);
#if !defined(NDEBUG) && !defined(PCT_INJECT_FAULT)
  assert(f.agree());
#endif
  return f.guarded_inclusion;
}

Signature composition_signature(const Signature& s1, const Signature& s2) {
  for (const auto& name : s1.controlled_names())
    if (s2.contains(name) && s2.is_controlled(name))
      throw Error(Errc::controlled_overlap, "port '" + name + "' is controlled by both sides");
  std::vector<std::string> controlled = s1.controlled_names();
  for (const auto& name : s2.controlled_names()) controlled.push_back(name);
  return overlay(s1, s2).with_controlled(controlled);
}

Contract compose(const Contract& c1, const Contract& c2) {
  if (!(c1.horizon() == c2.horizon()))
    throw Error(Errc::horizon_mismatch, "composing contracts with different horizons");
  const Signature sig = composition_signature(c1.signature(), c2.signature());
  const Contract k1 = canonicalize(c1);
  const Contract k2 = canonicalize(c2);
  Assertion g = align(k1.guarantee(), sig) & align(k2.guarantee(), sig);
  Assertion a = (align(k1.assumption(), sig) & align(k2.assumption(), sig)) | complement(g);
  Contract out(sig, std::move(a), std::move(g), true);
  assert(out.in_canonical_form());
  return out;
}

bool refines(const Contract& c1, const Contract& c2) {
  const Signature& big = c2.signature();
  if (!big.covers(c1.signature())) {
    for (const auto& p : c1.signature().ports())
      if (big.contains(p.name()) && !(big.port(p.name()) == p))
        throw Error(Errc::domain_conflict, "port '" + p.name() + "' has a different domain");
    return false;
  }
  if (!(c1.horizon() == c2.horizon()))
    throw Error(Errc::horizon_mismatch, "refinement between different horizons");
  const Contract k1 = canonicalize(c1);
  const Contract k2 = canonicalize(c2);
  return included_in(k2.assumption(), align(k1.assumption(), big), big) &&
         included_in(align(k1.guarantee(), big), k2.guarantee(), big);
}

Implementation compose_implementations(const Implementation& m1, const Implementation& m2) {
  if (!(m1.horizon() == m2.horizon()))
    throw Error(Errc::horizon_mismatch, "composing implementations with different horizons");
  const Signature sig = composition_signature(m1.signature(), m2.signature());
  const std::uint64_t cap = std::max(m1.cap(), m2.cap());
  return align(with_cap(m1, cap), sig) & align(with_cap(m2, cap), sig);
}

Contract rename_port(const Contract& c, std::string_view from, const std::string& to) {
  Assertion a = pct::rename_port(c.assumption(), from, to);
  Assertion g = pct::rename_port(c.guarantee(), from, to);
  Contract out = Contract::make(a.signature(), a, g);
  return c.canonical() ? canonicalize(out) : out;
}

}  // namespace pct
