#include "pct/oracle/oracle.hpp"

#include <algorithm>
#include <map>

#include "pct/errors.hpp"

namespace pct::oracle {

namespace {

Space space_of(const Signature& sig, Horizon h) { return {sig.ports(), h.steps()}; }

// Repeated division by the digit radices: digit k is port k / T, step k % T.
Flat decode(std::uint64_t index, const Space& space) {
  Flat flat;
  for (const Port& p : space.ports)
    for (int t = 0; t < space.steps; ++t) {
      flat.push_back(static_cast<std::uint32_t>(index % p.size()));
      index /= p.size();
    }
  return flat;
}

std::set<Flat> decode_all(const RunSet& bits, const Space& space) {
  std::set<Flat> out;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits.test(i)) out.insert(decode(i, space));
  return out;
}

Space unite(const Space& a, const Space& b) {
  std::map<std::string, Port> ports;
  for (const Port& p : a.ports) ports.emplace(p.name(), p);
  for (const Port& p : b.ports) {
    auto [it, fresh] = ports.emplace(p.name(), p);
    if (!fresh && !(it->second == p)) throw Error(Errc::domain_conflict, "port '" + p.name() + "' domains differ");
  }
  Space out{{}, a.steps};
  for (auto& [name, p] : ports) out.ports.push_back(p);
  return out;
}

// Maps runs of `big` to runs of `small` (ports of small must be in big).
class Restrictor {
 public:
  Restrictor(const Space& big, const Space& small) : steps_(big.steps) {
    for (const Port& p : small.ports) {
      auto it = std::find_if(big.ports.begin(), big.ports.end(), [&](const Port& q) { return q.name() == p.name(); });
      if (it == big.ports.end()) throw Error(Errc::signature_mismatch, "port '" + p.name() + "' missing");
      offsets_.push_back(static_cast<std::size_t>(it - big.ports.begin()) * static_cast<std::size_t>(steps_));
    }
  }
  Flat operator()(const Flat& run) const {
    Flat out;
    out.reserve(offsets_.size() * static_cast<std::size_t>(steps_));
    for (std::size_t off : offsets_)
      for (int t = 0; t < steps_; ++t) out.push_back(run[off + static_cast<std::size_t>(t)]);
    return out;
  }

 private:
  int steps_;
  std::vector<std::size_t> offsets_;
};

Space names_space(const Space& big, const std::vector<std::string>& names) {
  Space out{{}, big.steps};
  for (const Port& p : big.ports)
    if (std::find(names.begin(), names.end(), p.name()) != names.end()) out.ports.push_back(p);
  return out;
}

std::map<Flat, Rational> weights_of(const Distribution& d) {
  const Space space = space_of(d.space(), d.horizon());
  std::map<Flat, Rational> out;
  for (std::size_t i = 0; i < d.outcomes(); ++i) out[decode(i, space)] = d.weights()[i];
  return out;
}

struct ContractSets {
  Space space;
  std::set<Flat> a, g;
  bool guarantee_canonical(const Flat& run) const { return g.count(run) || !a.count(run); }
};

ContractSets sets_of(const Contract& c) {
  ContractSets out;
  out.space = space_of(c.signature(), c.horizon());
  out.a = decode_all(c.assumption().runs(), out.space);
  out.g = decode_all(c.guarantee().runs(), out.space);
  return out;
}

}  // namespace

RunTable from_assertion(const Assertion& e) {
  RunTable t;
  t.space = space_of(e.signature(), e.horizon());
  for (const auto& n : e.signature().controlled_names()) t.controlled.insert(n);
  t.runs = decode_all(e.runs(), t.space);
  return t;
}

std::vector<Flat> all_runs(const Space& space) {
  const std::size_t digits = space.ports.size() * static_cast<std::size_t>(space.steps);
  std::vector<std::uint32_t> radix;
  for (const Port& p : space.ports)
    for (int t = 0; t < space.steps; ++t) radix.push_back(p.size());
  std::vector<Flat> out;
  Flat cur(digits, 0);
  while (true) {
    out.push_back(cur);
    std::size_t k = 0;
    while (k < digits && ++cur[k] == radix[k]) cur[k++] = 0;
    if (k == digits) break;
  }
  return out;
}

RunTable oracle_product(const RunTable& a, const RunTable& b) {
  RunTable out;
  out.space = unite(a.space, b.space);
  out.controlled = a.controlled;
  out.controlled.insert(b.controlled.begin(), b.controlled.end());
  const Restrictor ra(out.space, a.space), rb(out.space, b.space);
  for (const Flat& r : all_runs(out.space))
    if (a.runs.count(ra(r)) && b.runs.count(rb(r))) out.runs.insert(r);
  return out;
}

bool oracle_satisfies(const RunTable& m, const Contract& c) {
  const ContractSets cs = sets_of(c);
  const Space big = unite(m.space, cs.space);
  const Restrictor rm(big, m.space), rc(big, cs.space);
  for (const Flat& r : all_runs(big)) {
    if (!m.runs.count(rm(r))) continue;
    const Flat rr = rc(r);
    if (cs.a.count(rr) && !cs.g.count(rr)) return false;
  }
  return true;
}

ContractTable oracle_compose(const Contract& c1, const Contract& c2) {
  const ContractSets s1 = sets_of(c1), s2 = sets_of(c2);
  ContractTable out;
  out.space = unite(s1.space, s2.space);
  for (const auto& n : c1.signature().controlled_names()) out.controlled.insert(n);
  for (const auto& n : c2.signature().controlled_names())
    if (!out.controlled.insert(n).second) throw Error(Errc::controlled_overlap, "port '" + n + "' controlled twice");
  const Restrictor r1(out.space, s1.space), r2(out.space, s2.space);
  for (const Flat& r : all_runs(out.space)) {
    const Flat x1 = r1(r), x2 = r2(r);
    const bool g = s1.guarantee_canonical(x1) && s2.guarantee_canonical(x2);
    const bool a = (s1.a.count(x1) && s2.a.count(x2)) || !g;
    if (g) out.guarantee.insert(r);
    if (a) out.assumption.insert(r);
  }
  return out;
}

bool oracle_refines(const Contract& c1, const Contract& c2) {
  const ContractSets s1 = sets_of(c1), s2 = sets_of(c2);
  for (const Port& p : s1.space.ports) {
    auto it = std::find_if(s2.space.ports.begin(), s2.space.ports.end(),
                           [&](const Port& q) { return q.name() == p.name(); });
    if (it == s2.space.ports.end() || !(*it == p)) return false;
  }
  const Restrictor r1(s2.space, s1.space);
  for (const Flat& r : all_runs(s2.space)) {
    const Flat x1 = r1(r);
    // Canonical forms: A1 contains A2, and G1 | not A1 within G2 | not A2.
    if (s2.a.count(r) && !s1.a.count(x1)) return false;
    if (s1.guarantee_canonical(x1) && !s2.guarantee_canonical(r)) return false;
  }
  return true;
}

Rational oracle_sat_level(const RunTable& m, const ProbContract& pc) {
  const ContractSets cs = sets_of(pc.base());
  const Space big = unite(m.space, cs.space);
  const Space omega = names_space(big, pc.pports());
  const Restrictor rm(big, m.space), rc(big, cs.space), rw(big, omega);
  std::set<Flat> bad;
  for (const Flat& r : all_runs(big))
    if (m.runs.count(rm(r)) && !cs.guarantee_canonical(rc(r))) bad.insert(rw(r));
  Rational level = 0;
  for (const auto& [w, p] : weights_of(pc.dist()))
    if (!bad.count(w)) level += p;
  return level;
}

RefineLevel oracle_refine_level(const ProbContract& pc1, const ProbContract& pc2) {
  const ContractSets s1 = sets_of(pc1.base()), s2 = sets_of(pc2.base());
  const Space omega = names_space(s2.space, pc2.pports());
  const Restrictor r1(s2.space, s1.space), rw(s2.space, omega);
  std::set<Flat> bad1, bad2;
  for (const Flat& r : all_runs(s2.space)) {
    if (!s1.guarantee_canonical(r1(r))) bad1.insert(rw(r));
    if (!s2.guarantee_canonical(r)) bad2.insert(rw(r));
  }
  RefineLevel out;
  out.p_good1 = 0;
  out.p_good_both = 0;
  for (const auto& [w, p] : weights_of(pc2.dist())) {
    if (bad1.count(w)) continue;
    out.p_good1 += p;
    if (!bad2.count(w)) out.p_good_both += p;
  }
  if (out.p_good1 != 0) out.level = out.p_good_both / out.p_good1;
  return out;
}

bool same_runs(const RunTable& a, const RunTable& b) {
  return a.space.steps == b.space.steps && a.space.ports == b.space.ports && a.runs == b.runs;
}

bool same_runs(const Assertion& engine, const std::set<Flat>& runs, const Space& space) {
  const Space es = space_of(engine.signature(), engine.horizon());
  if (es.steps != space.steps || !(es.ports == space.ports)) return false;
  return decode_all(engine.runs(), es) == runs;
}

}  // namespace pct::oracle
