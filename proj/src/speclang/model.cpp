#include "pct/speclang/model.hpp"

#include <algorithm>
#include <set>

#include "pct/errors.hpp"
#include "pct/speclang/denote.hpp"
#include "pct/speclang/parser.hpp"

namespace pct::speclang {

namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& d) { return d.name == name; });
  return it == items.end() ? nullptr : &*it;
}

template <typename T>
const T& get_named(const std::vector<T>& items, std::string_view name, const char* what) {
  if (const T* d = find_named(items, name)) return *d;
  throw Error(Errc::invalid_argument, "no " + std::string(what) + " named '" + std::string(name) + "'");
}

}  // namespace

Model::Model(Document doc, std::uint64_t cap) : doc_(std::move(doc)), cap_(cap) { check(doc_); }

Model Model::from_text(std::string_view text, std::uint64_t cap) { return Model(parse(text), cap); }

Horizon Model::horizon() const {
  if (!doc_.horizon) throw Error(Errc::invalid_argument, "document declares no horizon");
  return Horizon(*doc_.horizon);
}

Port Model::port(std::string_view name) const {
  const PortDecl& p = get_named(doc_.ports, name, "port");
  return p.boolean ? Port::boolean(p.name) : Port(p.name, p.values);
}

bool Model::has_contract(std::string_view name) const { return find_named(doc_.contracts, name); }
bool Model::has_impl(std::string_view name) const { return find_named(doc_.impls, name); }
bool Model::has_prob_contract(std::string_view name) const { return find_named(doc_.prob_contracts, name); }

const ContractDecl& Model::contract_decl(std::string_view name) const {
  return get_named(doc_.contracts, name, "contract");
}
const ImplDecl& Model::impl_decl(std::string_view name) const { return get_named(doc_.impls, name, "impl"); }
const ProbContractDecl& Model::prob_contract_decl(std::string_view name) const {
  return get_named(doc_.prob_contracts, name, "probcontract");
}

Signature Model::signature_of(const std::optional<std::vector<std::string>>& ports,
                              const std::optional<std::vector<std::string>>& controls,
                              std::initializer_list<const Expr*> exprs) const {
  std::set<std::string> names;
  if (ports) {
    names.insert(ports->begin(), ports->end());
  } else {
    for (const Expr* e : exprs)
      for (auto& p : referenced_ports(doc_, *e)) names.insert(p);
  }
  std::vector<Port> list;
  std::vector<std::string> controlled;
  for (const auto& n : names) {
    list.push_back(port(n));
    if (!controls && get_named(doc_.ports, n, "port").role == DeclaredRole::controlled) controlled.push_back(n);
  }
  if (controls) controlled = *controls;
  return Signature(std::move(list), controlled);
}

Signature Model::contract_signature(std::string_view name) const {
  const ContractDecl& c = contract_decl(name);
  return signature_of(c.ports, c.controls, {c.assume.get(), c.guarantee.get()});
}

Signature Model::impl_signature(std::string_view name) const {
  const ImplDecl& m = impl_decl(name);
  return signature_of(m.ports, m.controls, {m.behavior.get()});
}

Assertion Model::denote(const Expr& expr, const Signature& sig) const {
  return speclang::denote(doc_, expr, sig, horizon(), cap_);
}

Contract Model::contract(std::string_view name) const {
  const ContractDecl& c = contract_decl(name);
  const Signature sig = contract_signature(name);
  return Contract::make(sig, denote(*c.assume, sig), denote(*c.guarantee, sig));
}

Implementation Model::implementation(std::string_view name) const {
  const ImplDecl& m = impl_decl(name);
  return denote(*m.behavior, impl_signature(name));
}

Distribution Model::distribution(std::string_view name) const {
  const DistDecl& d = get_named(doc_.dists, name, "dist");
  if (d.bernoulli) return bernoulli_iid(port(d.ports.front()), *d.bernoulli, horizon());
  std::vector<Port> ports;
  for (const auto& p : d.ports) ports.push_back(port(p));
  const Signature space(ports);
  const RunSpace rs(space, horizon(), cap_);
  std::vector<Rational> weights(rs.size());
  for (const auto& entry : d.table) {
    Run run;
    for (const auto& [p, values] : entry.history.histories) {
      const Port port_p = port(p);
      History h;
      for (const auto& v : values) h.push_back(*port_p.index_of(v));
      run.histories[p] = std::move(h);
    }
    weights[rs.encode(run)] = entry.weight;
  }
  return Distribution(std::move(ports), horizon(), std::move(weights));
}

ProbContract Model::prob_contract(std::string_view name) const {
  if (!has_prob_contract(name)) return ProbContract::deterministic(contract(name));
  const ProbContractDecl& pc = prob_contract_decl(name);
  Distribution dist = Distribution::point_mass(horizon());
  if (pc.dist) {
    dist = distribution(*pc.dist);
  } else {
    for (const auto& p : pc.prob)
      dist = product_dist(dist, bernoulli_iid(port(p), *get_named(doc_.ports, p, "port").bernoulli, horizon()));
  }
  return ProbContract(contract(pc.contract), pc.prob, std::move(dist));
}

DistDecl dist_decl(const std::string& name, const Distribution& dist) {
  DistDecl d;
  d.name = name;
  d.ports = dist.port_names();
  const RunSpace rs(dist.space(), dist.horizon(), std::max<std::uint64_t>(dist.outcomes(), 1));
  for (std::uint64_t i = 0; i < dist.outcomes(); ++i) {
    if (dist.weights()[i] == 0) continue;
    const Run run = rs.decode(i);
    TableEntry entry;
    for (const Port& p : dist.space().ports()) {
      std::vector<std::string> values;
      for (auto v : run.histories.at(p.name())) values.push_back(p.domain()[v]);
      entry.history.histories.emplace_back(p.name(), std::move(values));
    }
    entry.weight = dist.weights()[i];
    d.table.push_back(std::move(entry));
  }
  return d;
}

Document with_composition(const Model& model, std::string_view left, std::string_view right,
                          const std::string& name) {
  const bool probabilistic = model.has_prob_contract(left) || model.has_prob_contract(right);
  // Engine composition first: it raises the precondition errors.
  const ProbContract composed = compose_prob(model.prob_contract(left), model.prob_contract(right));

  auto base_name = [&](std::string_view n) {
    return model.has_prob_contract(n) ? model.prob_contract_decl(n).contract : std::string(n);
  };
  const ContractDecl& c1 = model.contract_decl(base_name(left));
  const ContractDecl& c2 = model.contract_decl(base_name(right));

  using K = ExprKind;
  auto canonical_guarantee = [](const ContractDecl& c) {
    return make_binary(K::disjunction, c.guarantee, make_unary(K::negation, c.assume));
  };
  ExprPtr g = make_binary(K::conjunction, canonical_guarantee(c1), canonical_guarantee(c2));
  ExprPtr a = make_binary(K::disjunction, make_binary(K::conjunction, c1.assume, c2.assume),
                          make_unary(K::negation, g));

  Document doc = model.document();
  ContractDecl c;
  c.name = probabilistic ? name + "_base" : name;
  c.ports = composed.signature().names();
  c.controls = composed.signature().controlled_names();
  c.assume = a;
  c.guarantee = g;
  doc.contracts.push_back(c);
  if (!probabilistic) {
    check(doc);
    return doc;
  }

  ProbContractDecl pc;
  pc.name = name;
  pc.contract = c.name;
  pc.prob = composed.pports();
  auto explicit_dist = [&](std::string_view n) {
    return model.has_prob_contract(n) && model.prob_contract_decl(n).dist.has_value();
  };
  if (explicit_dist(left) || explicit_dist(right)) {
    pc.dist = name + "_dist";
    doc.dists.push_back(dist_decl(*pc.dist, composed.dist()));
  }
  doc.prob_contracts.push_back(pc);
  check(doc);
  return doc;
}

}  // namespace pct::speclang
