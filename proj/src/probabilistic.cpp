#include "pct/probabilistic.hpp"

#include <algorithm>
#include <set>

#include "pct/errors.hpp"

namespace pct {

namespace {

// For every joint history of `big`, the index of its restriction to `small`.
std::vector<std::uint64_t> restriction_table(const Signature& big, const Signature& small,
                                             Horizon horizon) {
  const RunSpace bs(big, horizon);
  const RunSpace ss(small, horizon);
  const auto steps = static_cast<std::size_t>(horizon.steps());
  std::vector<std::pair<std::size_t, std::size_t>> positions;  // (big pos, small pos)
  for (std::size_t j = 0; j < small.size(); ++j)
    positions.emplace_back(*big.position(small.ports()[j].name()), j);

  std::vector<std::uint64_t> table(bs.size());
  for (std::uint64_t i = 0; i < bs.size(); ++i) {
    std::uint64_t s = 0;
    for (auto [bp, sp] : positions)
      for (std::size_t t = 0; t < steps; ++t)
        s += bs.value(i, bp, static_cast<int>(t)) * ss.stride(sp * steps + t);
    table[i] = s;
  }
  return table;
}

std::vector<std::string> sorted_unique(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

Rational total_weight(const Distribution& d, const RunSet& excluded) {
  Rational sum = 0;
  for (std::size_t i = 0; i < d.outcomes(); ++i)
    if (!excluded.test(i)) sum += d.weights()[i];
  return sum;
}

// Joint histories of p for which some run of the space extending them lies
// outside `g` (both at signature `sig`).
RunSet violating_histories(const Assertion& runs_outside, const Signature& sig,
                           const std::vector<std::string>& pports) {
  return project(runs_outside, sig.restricted_to(pports)).runs();
}

}  // namespace

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(std::vector<Port> ports, Horizon horizon, std::vector<Rational> weights)
    : space_(std::move(ports)), horizon_(horizon), weights_(std::move(weights)) {
  const RunSpace sp(space_, horizon_);
  if (weights_.size() != sp.size())
    throw Error(Errc::invalid_argument, "distribution over " + describe(space_) + " needs " +
                                            std::to_string(sp.size()) + " weights, got " +
                                            std::to_string(weights_.size()));
  Rational sum = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw Error(Errc::probability_range, "negative probability " + to_string(w));
    sum += w;
  }
  if (sum != 1)
    throw Error(Errc::not_normalized, "probabilities sum to " + to_string(sum) + ", not 1");
}

Distribution Distribution::point_mass(Horizon horizon) {
  return Distribution({}, horizon, {Rational(1)});
}

const Rational& Distribution::weight(const Run& omega) const {
  return weights_[RunSpace(space_, horizon_).encode(omega)];
}

Distribution bernoulli_iid(const Port& port, const Rational& p_true, Horizon horizon) {
  if (!port.is_boolean())
    throw Error(Errc::invalid_argument, "bernoulli needs a boolean port, '" + port.name() + "' is not");
  if (p_true < 0 || p_true > 1)
    throw Error(Errc::probability_range, "probability " + to_string(p_true) + " outside [0, 1]");
  const auto steps = static_cast<unsigned>(horizon.steps());
  std::vector<Rational> weights(std::size_t{1} << steps);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    Rational w = 1;
    for (unsigned t = 0; t < steps; ++t) w *= ((i >> t) & 1U) ? p_true : Rational(1 - p_true);
    weights[i] = w;
  }
  return Distribution({port}, horizon, std::move(weights));
}

Distribution product_dist(const Distribution& d1, const Distribution& d2) {
  if (!(d1.horizon() == d2.horizon()))
    throw Error(Errc::horizon_mismatch, "product of distributions with different horizons");
  for (const auto& name : d2.port_names())
    if (d1.space().contains(name))
      throw Error(Errc::prob_port_overlap, "port '" + name + "' is random in both distributions");
  std::vector<Port> ports = d1.space().ports();
  for (const auto& p : d2.space().ports()) ports.push_back(p);
  const Signature joint(ports);
  const auto to1 = restriction_table(joint, d1.space(), d1.horizon());
  const auto to2 = restriction_table(joint, d2.space(), d1.horizon());
  std::vector<Rational> weights(to1.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    weights[i] = d1.weights()[to1[i]] * d2.weights()[to2[i]];
  return Distribution(std::move(ports), d1.horizon(), std::move(weights));
}

Distribution marginal(const Distribution& d, const std::vector<std::string>& ports) {
  const auto names = sorted_unique(ports);
  for (const auto& n : names)
    if (!d.space().contains(n))
      throw Error(Errc::signature_mismatch, "cannot marginalize onto '" + n + "', not a port of the distribution");
  const Signature sub = d.space().restricted_to(names);
  const auto table = restriction_table(d.space(), sub, d.horizon());
  std::vector<Rational> weights(RunSpace(sub, d.horizon()).size());
  for (std::size_t i = 0; i < table.size(); ++i) weights[table[i]] += d.weights()[i];
  return Distribution(sub.ports(), d.horizon(), std::move(weights));
}

Distribution rename_port(const Distribution& d, std::string_view from, const std::string& to) {
  const Port& old_port = d.space().port(from);
  if (from == to) return d;
  if (d.space().contains(to))
    throw Error(Errc::invalid_argument, "cannot rename '" + std::string(from) + "' to existing port '" + to + "'");
  std::vector<Port> ports;
  for (const auto& p : d.space().ports())
    ports.push_back(p.name() == from ? Port(to, old_port.domain()) : p);
  const Signature renamed(ports);
  const RunSpace src(d.space(), d.horizon());
  const RunSpace dst(renamed, d.horizon());
  std::vector<Rational> weights(d.outcomes());
  for (std::uint64_t i = 0; i < src.size(); ++i) {
    Run r = src.decode(i);
    auto node = r.histories.extract(std::string(from));
    node.key() = to;
    r.histories.insert(std::move(node));
    weights[dst.encode(r)] = d.weights()[i];
  }
  return Distribution(std::move(ports), d.horizon(), std::move(weights));
}

// ---------------------------------------------------------------------------
// ProbContract

ProbContract::ProbContract(Contract base, std::vector<std::string> pports, Distribution dist)
    : base_(canonicalize(base)), pports_(sorted_unique(std::move(pports))), dist_(std::move(dist)) {
  const Signature& sig = base_.signature();
  for (const auto& name : pports_) {
    if (!sig.contains(name))
      throw Error(Errc::signature_mismatch, "probabilistic port '" + name + "' is not in " + describe(sig));
    if (sig.is_controlled(name))
      throw Error(Errc::port_role_mismatch, "probabilistic port '" + name + "' must be uncontrolled");
  }
  if (dist_.port_names() != pports_)
    throw Error(Errc::signature_mismatch, "distribution ranges over " + describe(dist_.space()) +
                                              " but the probabilistic ports are different");
  if (!sig.covers(dist_.space()))
    throw Error(Errc::domain_conflict, "distribution port domains differ from the contract's");
  if (!(dist_.horizon() == base_.horizon()))
    throw Error(Errc::horizon_mismatch, "distribution and contract use different horizons");
}

ProbContract ProbContract::deterministic(const Contract& base) {
  return ProbContract(base, {}, Distribution::point_mass(base.horizon()));
}

SatReport sat_level(const Implementation& m, const ProbContract& pc) {
  const Signature& sig = pc.signature();
  const Signature& msig = m.signature();
  if (!(m.horizon() == pc.base().horizon()))
    throw Error(Errc::horizon_mismatch, "implementation and contract use different horizons");
  if (!sig.covers(msig)) {
    for (const auto& p : msig.ports())
      if (sig.contains(p.name()) && !(sig.port(p.name()) == p))
        throw Error(Errc::domain_conflict, "port '" + p.name() + "' has a different domain");
    throw Error(Errc::port_role_mismatch,
                "implementation ports " + describe(msig) + " are not among the contract's " + describe(sig));
  }
  if (msig.controlled_names() != sig.controlled_names())
    throw Error(Errc::port_role_mismatch, "implementation controls " + describe(msig) +
                                              " but the contract controls " + describe(sig));
  for (const auto& name : msig.uncontrolled_names())
    if (sig.is_controlled(name))
      throw Error(Errc::port_role_mismatch, "port '" + name + "' is an input of the implementation but controlled by the contract");

  const Assertion outside = align(m, sig) - pc.base().guarantee();
  const RunSet bad = violating_histories(outside, sig, pc.pports());

  SatReport report{total_weight(pc.dist(), bad), std::nullopt};
  std::optional<std::size_t> worst;
  for (auto i = bad.find_first(); i != RunSet::npos; i = bad.find_next(i))
    if (!worst || pc.dist().weights()[i] > pc.dist().weights()[*worst]) worst = i;
  if (worst) report.witness_bad = RunSpace(pc.dist().space(), pc.dist().horizon()).decode(*worst);
  return report;
}

ProbContract compose_prob(const ProbContract& pc1, const ProbContract& pc2) {
  Contract base = compose(pc1.base(), pc2.base());
  for (const auto& name : pc1.pports())
    if (std::find(pc2.pports().begin(), pc2.pports().end(), name) != pc2.pports().end())
      throw Error(Errc::prob_port_overlap, "port '" + name + "' is probabilistic in both contracts");
  auto check_peer = [](const ProbContract& a, const ProbContract& b) {
    for (const auto& name : a.pports())
      if (b.signature().contains(name) && b.signature().is_controlled(name))
        throw Error(Errc::prob_port_controlled,
                    "probabilistic port '" + name + "' is controlled by the other contract");
  };
  check_peer(pc1, pc2);
  check_peer(pc2, pc1);
  std::vector<std::string> pports = pc1.pports();
  pports.insert(pports.end(), pc2.pports().begin(), pc2.pports().end());
  return ProbContract(std::move(base), std::move(pports), product_dist(pc1.dist(), pc2.dist()));
}

RefineReport refine_level(const ProbContract& pc1, const ProbContract& pc2) {
  const Signature& sig2 = pc2.signature();
  if (!sig2.covers(pc1.signature()))
    throw Error(Errc::signature_mismatch, describe(pc1.signature()) + " is not contained in " + describe(sig2));
  if (!(pc1.base().horizon() == pc2.base().horizon()))
    throw Error(Errc::horizon_mismatch, "refinement between different horizons");
  for (const auto& name : pc1.pports())
    if (std::find(pc2.pports().begin(), pc2.pports().end(), name) == pc2.pports().end())
      throw Error(Errc::signature_mismatch, "probabilistic port '" + name + "' of the refining contract is not probabilistic in the refined one");
  if (!(marginal(pc2.dist(), pc1.pports()) == pc1.dist()))
    throw Error(Errc::marginal_mismatch, "the refining contract's distribution is not the marginal of the refined one's");

  const Assertion g1 = align(pc1.base().guarantee(), sig2);
  const Assertion& g2 = pc2.base().guarantee();
  const RunSet bad1 = violating_histories(complement(g1), sig2, pc2.pports());
  const RunSet bad2 = violating_histories(complement(g2), sig2, pc2.pports());

  RefineReport report;
  report.p_good1 = total_weight(pc2.dist(), bad1);
  report.p_good_both = total_weight(pc2.dist(), bad1 | bad2);
  if (report.p_good1 != 0) report.level = report.p_good_both / report.p_good1;
  return report;
}

WrapperPorts wrapper_ports(std::string_view x) {
  const std::string base(x);
  return {base + "_p", base + "_c", base + "_s"};
}

Wrapped wrap(std::string_view x, const ProbContract& pc) {
  const auto& pp = pc.pports();
  if (std::find(pp.begin(), pp.end(), x) == pp.end())
    throw Error(Errc::invalid_argument, "port '" + std::string(x) + "' is not probabilistic in the contract");
  const Signature& sig = pc.signature();
  const WrapperPorts names = wrapper_ports(x);
  for (const auto* n : {&names.probabilistic, &names.controlled, &names.selector})
    if (sig.contains(*n))
      throw Error(Errc::invalid_argument, "wrapper port '" + *n + "' already exists");

  const Port& source = sig.port(x);
  const Port xp(names.probabilistic, source.domain());
  const Port xc(names.controlled, source.domain());
  const Port selector(names.selector, {"p", "c"});
  const Horizon horizon = pc.base().horizon();

  std::vector<Port> ports = sig.ports();
  ports.push_back(xp);
  const Signature widened(ports, sig.controlled_names());
  Contract base = Contract::make(widened, pc.base().assumption(), pc.base().guarantee());

  std::vector<std::string> pports;
  for (const auto& n : pp)
    if (n != x) pports.push_back(n);
  pports.push_back(names.probabilistic);
  ProbContract moved(std::move(base), std::move(pports), rename_port(pc.dist(), x, names.probabilistic));

  const Port out(std::string(x), source.domain());
  const Signature wsig({out, xp, xc, selector}, {std::string(x)});
  const RunSpace space(wsig, horizon);
  const std::size_t px = *wsig.position(out.name());
  const std::size_t pp_ = *wsig.position(xp.name());
  const std::size_t pc_ = *wsig.position(xc.name());
  const std::size_t ps = *wsig.position(selector.name());
  RunSet bits(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    bool ok = true;
    for (int t = 0; t < horizon.steps() && ok; ++t) {
      const std::uint32_t chosen = space.value(i, ps, t) == 0 ? space.value(i, pp_, t) : space.value(i, pc_, t);
      ok = space.value(i, px, t) == chosen;
    }
    if (ok) bits.set(i);
  }
  const Assertion g(wsig, horizon, std::move(bits));
  Contract wrapper = Contract::make(wsig, universe(wsig, horizon), g);
  return {std::move(moved), std::move(wrapper)};
}

ProbContract rename_port(const ProbContract& pc, std::string_view from, const std::string& to) {
  Contract base = rename_port(pc.base(), from, to);
  std::vector<std::string> pports;
  for (const auto& n : pc.pports()) pports.push_back(n == from ? to : n);
  Distribution dist = pc.dist().space().contains(from) ? rename_port(pc.dist(), from, to) : pc.dist();
  return ProbContract(std::move(base), std::move(pports), std::move(dist));
}

}  // namespace pct
