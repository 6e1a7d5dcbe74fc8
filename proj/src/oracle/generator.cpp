#include "pct/oracle/generator.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>

#include "pct/errors.hpp"

namespace pct::oracle {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "empty range");
  // Rejection keeps the draw uniform for every n.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

Budget Budget::parse(std::string_view spec) {
  Budget b;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::invalid_argument, "budget item '" + std::string(item) + "' needs key=value");
    const std::string_view key = item.substr(0, eq), val = item.substr(eq + 1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc{} || ptr != val.data() + val.size() || v > (1u << 30))
      throw Error(Errc::invalid_argument, "budget value '" + std::string(val) + "' is not a count");
    const int iv = static_cast<int>(v);
    if (key == "ports") b.ports = iv;
    else if (key == "prob") b.prob_ports = iv;
    else if (key == "h") b.max_horizon = iv;
    else if (key == "domain") b.max_domain = iv;
    else if (key == "cap") b.universe_cap = v;
    else throw Error(Errc::invalid_argument, "unknown budget key '" + std::string(key) + "'");
  }
  if (b.max_horizon < 1 || b.max_domain < 1 || b.universe_cap < 1)
    throw Error(Errc::invalid_argument, "budget needs h >= 1, domain >= 1 and cap >= 1");
  return b;
}

std::string Budget::describe() const {
  return "ports=" + std::to_string(ports) + ",prob=" + std::to_string(prob_ports) + ",h=" +
         std::to_string(max_horizon) + ",domain=" + std::to_string(max_domain) + ",cap=" +
         std::to_string(universe_cap);
}

namespace {

enum class Kind { prob, controlled, input };

struct PortSpec {
  std::string name;
  int side;        // owner, 1 or 2
  Kind kind;
  int domain;      // size
  bool boolean;    // printed as {false, true}
  bool read_by_other = false;
};

Port make_port(const PortSpec& s) {
  if (s.boolean) return Port::boolean(s.name);
  std::vector<std::string> values;
  for (int v = 0; v < s.domain; ++v) values.push_back("v" + std::to_string(v));
  return Port(s.name, values);
}

int random_domain(Rng& rng, const Budget& b) {
  return b.max_domain <= 1 ? 1 : rng.between(2, b.max_domain);
}

std::vector<PortSpec> own_ports(Rng& rng, const Budget& b, int side) {
  std::vector<PortSpec> out;
  const int np = rng.between(std::min(1, std::max(0, b.prob_ports)), std::max(0, b.prob_ports));
  for (int k = 0; k < np; ++k)
    out.push_back({"f" + std::to_string(side) + "_" + std::to_string(k), side, Kind::prob, 2, true});
  const int nown = rng.between(0, std::max(0, b.ports));
  int nc = 0, nu = 0;
  for (int k = 0; k < nown; ++k) {
    const bool controlled = rng.chance(1, 2);
    const int d = random_domain(rng, b);
    const std::string name = (controlled ? "c" : "u") + std::to_string(side) + "_" + std::to_string(controlled ? nc++ : nu++);
    out.push_back({name, side, controlled ? Kind::controlled : Kind::input, d, d == 2 && rng.chance(1, 2)});
  }
  return out;
}

std::uint64_t universe_size(const std::vector<PortSpec>& ports, int h, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (const auto& p : ports)
    for (int t = 0; t < h; ++t) {
      size *= static_cast<std::uint64_t>(p.domain);
      if (size > cap) return cap + 1;
    }
  return size;
}

// Lowers the horizon, then the largest domains, until the universe fits.
void fit(std::vector<PortSpec>& ports, int& h, std::uint64_t cap) {
  while (universe_size(ports, h, cap) > cap) {
    if (h > 1) {
      --h;
      continue;
    }
    auto it = std::max_element(ports.begin(), ports.end(),
                               [](const PortSpec& a, const PortSpec& b) { return a.domain < b.domain; });
    if (it == ports.end() || it->domain <= 2) break;
    --it->domain;
    it->boolean = false;
  }
}

Assertion random_subset(Rng& rng, const Signature& sig, Horizon h, std::uint64_t num, std::uint64_t den,
                        std::uint64_t cap) {
  Assertion out = Assertion::empty(sig, h, cap);
  RunSet bits = out.runs();
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (rng.chance(num, den)) bits.set(i);
  return Assertion(sig, h, std::move(bits), cap);
}

// Receptive implementation: each joint history of the uncontrolled ports
// gets one or two controlled continuations.
Implementation receptive(Rng& rng, const Signature& sig, Horizon h, std::uint64_t cap) {
  const Signature ins = sig.restricted_to(sig.uncontrolled_names());
  const Signature outs = sig.restricted_to(sig.controlled_names());
  const RunSpace is(ins, h, cap), os(outs, h, cap), full(sig, h, cap);
  RunSet bits(full.size());
  for (std::uint64_t u = 0; u < is.size(); ++u) {
    const Run ur = is.decode(u);
    const std::uint64_t choices = std::min<std::uint64_t>(os.size(), 1 + rng.below(2));
    for (std::uint64_t k = 0; k < choices; ++k) {
      Run r = ur;
      for (auto& [name, hist] : os.decode(rng.below(os.size())).histories) r.histories[name] = hist;
      bits.set(full.encode(r));
    }
  }
  return Assertion(sig, h, std::move(bits), cap);
}

// Guarantee around an implementation: for a random share of the joint
// probabilistic histories, every run of M agreeing with them is included,
// plus some noise.
Assertion guarantee_around(Rng& rng, const Implementation& m, const Signature& sig,
                           const std::vector<std::string>& pports, Horizon h, std::uint64_t cap) {
  static constexpr std::uint64_t kNoise[] = {0, 1, 2};  // quarters
  static constexpr std::uint64_t kGood[] = {1, 2, 3, 4};  // quarters
  const std::uint64_t noise = kNoise[rng.below(3)];
  const std::uint64_t good_share = kGood[rng.below(4)];
  Assertion g = random_subset(rng, sig, h, noise, 4, cap);
  const Signature psig = sig.restricted_to(pports);
  const RunSpace ps(psig, h, cap);
  std::vector<bool> good(ps.size());
  for (std::size_t w = 0; w < good.size(); ++w) good[w] = rng.chance(good_share, 4);
  const Assertion lifted = align(m, sig);
  const RunSpace full(sig, h, cap);
  RunSet bits = g.runs();
  for (auto i = lifted.runs().find_first(); i != RunSet::npos; i = lifted.runs().find_next(i)) {
    Run r = full.decode(i);
    Run w;
    for (const auto& p : pports) w.histories[p] = r.histories.at(p);
    if (good[ps.encode(w)]) bits.set(i);
  }
  return Assertion(sig, h, std::move(bits), cap);
}

Assertion random_assumption(Rng& rng, const Signature& sig, Horizon h, std::uint64_t cap) {
  if (rng.chance(1, 3)) return universe(sig, h, cap);
  return random_subset(rng, sig, h, rng.chance(1, 2) ? 2 : 3, 4, cap);
}

struct Side {
  Signature sig;
  std::vector<std::string> pports;
  Implementation m;
  Contract c;
  Distribution dist;
};

Side build_side(Rng& rng, const std::vector<PortSpec>& specs, int side, const std::vector<std::string>& reads,
                Horizon h, std::uint64_t cap) {
  std::vector<Port> ports;
  std::vector<std::string> controlled, pports, optional_inputs;
  for (const auto& s : specs) {
    const bool own = s.side == side;
    const bool read = std::find(reads.begin(), reads.end(), s.name) != reads.end();
    if (!own && !read) continue;
    ports.push_back(make_port(s));
    if (own && s.kind == Kind::controlled) controlled.push_back(s.name);
    if (own && s.kind == Kind::prob) pports.push_back(s.name);
    if (!(own && s.kind != Kind::input)) optional_inputs.push_back(s.name);
  }
  const Signature sig(ports, controlled);
  std::sort(pports.begin(), pports.end());

  // M may ignore one non-probabilistic input.
  Signature msig = sig;
  if (!optional_inputs.empty() && rng.chance(1, 4)) {
    const std::string drop = optional_inputs[rng.below(optional_inputs.size())];
    std::vector<std::string> keep;
    for (const auto& n : sig.names())
      if (n != drop) keep.push_back(n);
    msig = sig.restricted_to(keep);
  }
  Implementation m = receptive(rng, msig, h, cap);
  Assertion a = random_assumption(rng, sig, h, cap);
  Assertion g = guarantee_around(rng, m, sig, pports, h, cap);
  std::vector<Port> pp;
  for (const auto& n : pports) pp.push_back(sig.port(n));
  Distribution dist = random_distribution(rng, pp, h);
  return {sig, pports, std::move(m), Contract::make(sig, a, g), std::move(dist)};
}

}  // namespace

Distribution random_distribution(Rng& rng, const std::vector<Port>& ports, Horizon horizon) {
  const Signature space(ports);
  const RunSpace rs(space, horizon);
  std::vector<Rational> weights(rs.size());
  std::uint64_t total = 0;
  std::vector<std::uint64_t> raw(rs.size());
  for (auto& w : raw) total += (w = rng.below(5));
  if (total == 0) {
    raw[rng.below(raw.size())] = 1;
    total = 1;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) weights[i] = Rational(raw[i], total);
  return Distribution(ports, horizon, std::move(weights));
}

Instance gen_instance(std::uint64_t seed, const Budget& budget, bool disjoint) {
  Rng rng(seed * 0x9E3779B97F4A7C15ull + 1);
  int h = rng.between(1, budget.max_horizon);
  std::vector<PortSpec> specs = own_ports(rng, budget, 1);
  for (auto& s : own_ports(rng, budget, 2)) specs.push_back(s);

  // Each side may read ports owned by the other, within its port budget.
  std::map<int, std::vector<std::string>> reads;
  if (!disjoint) {
    for (int side : {1, 2}) {
      int used = 0;
      for (const auto& s : specs)
        if (s.side == side && s.kind != Kind::prob) ++used;
      for (const auto& s : specs)
        if (s.side != side && used < budget.ports && rng.chance(1, 2)) {
          reads[side].push_back(s.name);
          ++used;
        }
    }
  }
  fit(specs, h, budget.universe_cap);
  const Horizon horizon(h);
  const std::uint64_t cap = budget.universe_cap;
  Side s1 = build_side(rng, specs, 1, reads[1], horizon, cap);
  Side s2 = build_side(rng, specs, 2, reads[2], horizon, cap);
  return {seed, std::move(s1.m), std::move(s2.m), ProbContract(s1.c, s1.pports, s1.dist),
          ProbContract(s2.c, s2.pports, s2.dist)};
}

RefinementInstance gen_refinement(std::uint64_t seed, const Budget& budget, bool tight) {
  Rng rng(seed * 0xD1B54A32D192ED03ull + 7);
  int h = rng.between(1, budget.max_horizon);
  std::vector<PortSpec> specs = own_ports(rng, budget, 1);
  // Extra ports of the refined contract: fresh inputs, some probabilistic.
  const int extra = rng.between(0, std::max(0, std::min(2, budget.ports)));
  for (int k = 0; k < extra; ++k) {
    const bool prob = rng.chance(1, 2);
    const int d = prob ? 2 : random_domain(rng, budget);
    specs.push_back({"e_" + std::to_string(k), 2, prob ? Kind::prob : Kind::input, d, prob || (d == 2 && rng.chance(1, 2))});
  }
  fit(specs, h, budget.universe_cap);
  const Horizon horizon(h);
  const std::uint64_t cap = budget.universe_cap;

  Side s1 = build_side(rng, specs, 1, {}, horizon, cap);

  std::vector<Port> ports2 = s1.sig.ports();
  std::vector<std::string> p2 = s1.pports;
  for (const auto& s : specs)
    if (s.side == 2) {
      ports2.push_back(make_port(s));
      if (s.kind == Kind::prob) p2.push_back(s.name);
    }
  // An input of the refining contract may become probabilistic.
  for (const auto& n : s1.sig.uncontrolled_names())
    if (std::find(p2.begin(), p2.end(), n) == p2.end() && s1.sig.port(n).is_boolean() && rng.chance(1, 3))
      p2.push_back(n);
  std::sort(p2.begin(), p2.end());
  const Signature sig2(ports2, s1.sig.controlled_names());

  std::vector<Port> pp2;
  for (const auto& n : p2) pp2.push_back(sig2.port(n));
  const Distribution d2 = random_distribution(rng, pp2, horizon);
  const Distribution d1 = marginal(d2, s1.pports);

  // Keep the conditioning event non-empty: all runs agreeing with one likely
  // history w0 go into G1.
  const RunSpace ws(d2.space(), horizon);
  std::vector<std::uint64_t> positive;
  for (std::uint64_t i = 0; i < d2.outcomes(); ++i)
    if (d2.weights()[i] != 0) positive.push_back(i);
  const Run w0 = ws.decode(positive[rng.below(positive.size())]);
  const RunSpace s1space(s1.sig, horizon, cap);
  RunSet g1 = maximal_implementation(s1.c).runs();
  for (std::uint64_t i = 0; i < s1space.size(); ++i) {
    const Run r = s1space.decode(i);
    bool agrees = true;
    for (const auto& [name, hist] : w0.histories)
      if (r.histories.count(name) && r.histories.at(name) != hist) agrees = false;
    if (agrees) g1.set(i);
  }
  const Contract c1 = Contract::make(s1.sig, s1.c.assumption(), Assertion(s1.sig, horizon, g1, cap));

  // G2 perturbs the lifted canonical G1; A2 is fresh.
  const Assertion g1_lifted = align(maximal_implementation(c1), sig2);
  const Assertion removed = random_subset(rng, sig2, horizon, rng.below(3), 8, cap);
  Assertion g2 = g1_lifted - removed;
  if (!tight) g2 = g2 | random_subset(rng, sig2, horizon, rng.below(3), 8, cap);
  const Assertion a2 = tight ? universe(sig2, horizon, cap) : random_assumption(rng, sig2, horizon, cap);
  const Contract c2 = Contract::make(sig2, a2, g2);

  return {seed, s1.m, ProbContract(c1, s1.pports, d1), ProbContract(c2, p2, d2)};
}

Audit audit_generator(std::uint64_t first_seed, std::size_t count, const Budget& budget) {
  Audit audit;
  for (std::size_t k = 0; k < count; ++k) {
    const Instance inst = gen_instance(first_seed + k, budget);
    ++audit.generated;
    try {
      (void)compose_prob(inst.pc1, inst.pc2);
      (void)compose_implementations(inst.m1, inst.m2);
    } catch (const Error&) {
      ++audit.rejected;
    }
  }
  return audit;
}

}  // namespace pct::oracle
