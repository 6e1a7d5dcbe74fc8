#include "pct/traces.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "pct/errors.hpp"

namespace pct {

// ---------------------------------------------------------------------------
// Port / Signature / Horizon

Port::Port(std::string name, std::vector<std::string> domain)
    : name_(std::move(name)), domain_(std::move(domain)) {
  if (name_.empty()) throw Error(Errc::invalid_argument, "port name must not be empty");
  if (domain_.empty())
    throw Error(Errc::invalid_argument, "port '" + name_ + "' has an empty domain");
  std::set<std::string> seen;
  for (const auto& v : domain_)
    if (!seen.insert(v).second)
      throw Error(Errc::invalid_argument,
                  "port '" + name_ + "' lists value '" + v + "' twice");
}

Port Port::boolean(std::string name) { return Port(std::move(name), {"false", "true"}); }

bool Port::is_boolean() const {
  return domain_.size() == 2 && domain_[0] == "false" && domain_[1] == "true";
}

std::optional<std::uint32_t> Port::index_of(std::string_view value) const {
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (domain_[i] == value) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

Signature::Signature(std::vector<Port> ports, const std::vector<std::string>& controlled)
    : ports_(std::move(ports)) {
  std::sort(ports_.begin(), ports_.end(),
            [](const Port& a, const Port& b) { return a.name() < b.name(); });
  for (std::size_t i = 1; i < ports_.size(); ++i)
    if (ports_[i].name() == ports_[i - 1].name())
      throw Error(Errc::invalid_argument, "duplicate port '" + ports_[i].name() + "'");
  roles_.assign(ports_.size(), Role::uncontrolled);
  for (const auto& name : controlled) {
    auto pos = position(name);
    if (!pos)
      throw Error(Errc::signature_mismatch,
                  "controlled port '" + name + "' is not in the signature");
    roles_[*pos] = Role::controlled;
  }
}

std::optional<std::size_t> Signature::position(std::string_view name) const {
  auto it = std::lower_bound(ports_.begin(), ports_.end(), name,
                             [](const Port& p, std::string_view n) { return p.name() < n; });
  if (it == ports_.end() || it->name() != name) return std::nullopt;
  return static_cast<std::size_t>(it - ports_.begin());
}

const Port& Signature::port(std::string_view name) const {
  auto pos = position(name);
  if (!pos)
    throw Error(Errc::signature_mismatch, "no port '" + std::string(name) + "' in " + describe(*this));
  return ports_[*pos];
}

Role Signature::role(std::string_view name) const {
  auto pos = position(name);
  if (!pos)
    throw Error(Errc::signature_mismatch, "no port '" + std::string(name) + "' in " + describe(*this));
  return roles_[*pos];
}

std::vector<std::string> Signature::names() const {
  std::vector<std::string> out;
  for (const auto& p : ports_) out.push_back(p.name());
  return out;
}

std::vector<std::string> Signature::controlled_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ports_.size(); ++i)
    if (roles_[i] == Role::controlled) out.push_back(ports_[i].name());
  return out;
}

std::vector<std::string> Signature::uncontrolled_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ports_.size(); ++i)
    if (roles_[i] == Role::uncontrolled) out.push_back(ports_[i].name());
  return out;
}

Signature Signature::with_controlled(const std::vector<std::string>& controlled) const {
  return Signature(ports_, controlled);
}

Signature Signature::restricted_to(const std::vector<std::string>& names) const {
  std::vector<Port> ports;
  std::vector<std::string> controlled;
  for (const auto& n : names) {
    ports.push_back(port(n));
    if (is_controlled(n)) controlled.push_back(n);
  }
  return Signature(std::move(ports), controlled);
}

bool Signature::covers(const Signature& other) const {
  for (const auto& p : other.ports()) {
    auto pos = position(p.name());
    if (!pos || !(ports_[*pos] == p)) return false;
  }
  return true;
}

namespace {

void check_domains(const Signature& a, const Signature& b) {
  for (const auto& p : b.ports()) {
    auto pos = a.position(p.name());
    if (pos && !(a.ports()[*pos] == p))
      throw Error(Errc::domain_conflict,
                  "port '" + p.name() + "' has different domains on the two sides");
  }
}

}  // namespace

Signature unite(const Signature& a, const Signature& b) {
  check_domains(a, b);
  for (const auto& p : b.ports())
    if (a.contains(p.name()) && a.role(p.name()) != b.role(p.name()))
      throw Error(Errc::role_conflict,
                  "port '" + p.name() + "' is controlled on one side and uncontrolled on the other");
  return overlay(a, b);
}

Signature overlay(const Signature& primary, const Signature& other) {
  check_domains(primary, other);
  std::vector<Port> ports = primary.ports();
  std::vector<std::string> controlled = primary.controlled_names();
  for (const auto& p : other.ports()) {
    if (primary.contains(p.name())) continue;
    ports.push_back(p);
    if (other.is_controlled(p.name())) controlled.push_back(p.name());
  }
  return Signature(std::move(ports), controlled);
}

std::string describe(const Signature& sig) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& p : sig.ports()) {
    if (!first) out << ", ";
    first = false;
    out << p.name();
    if (sig.is_controlled(p.name())) out << "!";
  }
  out << "}";
  return out.str();
}

Horizon::Horizon(int steps) : steps_(steps) {
  if (steps < 1) throw Error(Errc::invalid_argument, "horizon must be at least 1 step");
}

std::string describe(const Run& run, const Signature& sig) {
  std::ostringstream out;
  out << "(";
  bool first = true;
  for (const auto& [name, hist] : run.histories) {
    if (!first) out << ", ";
    first = false;
    out << name << " = [";
    const Port* port = sig.contains(name) ? &sig.port(name) : nullptr;
    for (std::size_t t = 0; t < hist.size(); ++t) {
      if (t) out << ", ";
      if (port && hist[t] < port->size())
        out << port->domain()[hist[t]];
      else
        out << hist[t];
    }
    out << "]";
  }
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// RunSpace

RunSpace::RunSpace(const Signature& sig, Horizon horizon, std::uint64_t cap)
    : names_(sig.names()), steps_(horizon.steps()) {
  for (const auto& p : sig.ports()) {
    for (int t = 0; t < steps_; ++t) {
      radix_.push_back(p.size());
      stride_.push_back(size_);
      if (size_ > cap / p.size())
        throw Error(Errc::capacity, "run universe of " + describe(sig) + " at horizon " +
                                        std::to_string(steps_) + " exceeds the enumeration cap of " +
                                        std::to_string(cap) + " runs");
      size_ *= p.size();
    }
  }
  if (size_ > cap)
    throw Error(Errc::capacity, "run universe exceeds the enumeration cap");
}

std::uint64_t RunSpace::encode(const Run& run) const {
  if (run.histories.size() != names_.size())
    throw Error(Errc::signature_mismatch, "run does not assign exactly the signature's ports");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto it = run.histories.find(names_[i]);
    if (it == run.histories.end())
      throw Error(Errc::signature_mismatch, "run misses port '" + names_[i] + "'");
    const History& h = it->second;
    if (h.size() != static_cast<std::size_t>(steps_))
      throw Error(Errc::horizon_mismatch, "history of '" + names_[i] + "' has the wrong length");
    for (int t = 0; t < steps_; ++t) {
      const std::size_t d = i * static_cast<std::size_t>(steps_) + static_cast<std::size_t>(t);
      if (h[static_cast<std::size_t>(t)] >= radix_[d])
        throw Error(Errc::invalid_argument, "value outside the domain of '" + names_[i] + "'");
      index += h[static_cast<std::size_t>(t)] * stride_[d];
    }
  }
  return index;
}

Run RunSpace::decode(std::uint64_t index) const {
  Run run;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    History h(static_cast<std::size_t>(steps_));
    for (int t = 0; t < steps_; ++t) h[static_cast<std::size_t>(t)] = value(index, i, t);
    run.histories.emplace(names_[i], std::move(h));
  }
  return run;
}

// ---------------------------------------------------------------------------
// Restriction from a signature to one of its sub-signatures.

namespace {

// Walks every index of `large` in order and reports the index of its
// restriction in `small`, maintained incrementally with an odometer.
class Restriction {
 public:
  Restriction(const Signature& large_sig, const RunSpace& large, const Signature& small_sig)
      : large_(large), small_stride_(large.digits(), 0) {
    const RunSpace small(small_sig, Horizon(large.steps()), ~std::uint64_t{0});
    const auto steps = static_cast<std::size_t>(large.steps());
    for (std::size_t i = 0; i < large_sig.size(); ++i) {
      auto pos = small_sig.position(large_sig.ports()[i].name());
      if (!pos) continue;
      for (std::size_t t = 0; t < steps; ++t)
        small_stride_[i * steps + t] = small.stride(*pos * steps + t);
    }
  }

  template <typename F>
  void for_each(F&& fn) const {
    const std::size_t n = large_.digits();
    std::vector<std::uint32_t> digit(n, 0);
    std::uint64_t small = 0;
    for (std::uint64_t index = 0; index < large_.size(); ++index) {
      fn(index, small);
      for (std::size_t d = 0; d < n; ++d) {
        if (++digit[d] < large_.radix(d)) {
          small += small_stride_[d];
          break;
        }
        small -= static_cast<std::uint64_t>(large_.radix(d) - 1) * small_stride_[d];
        digit[d] = 0;
      }
    }
  }

 private:
  const RunSpace& large_;
  std::vector<std::uint64_t> small_stride_;
};

void require_same_space(const Assertion& a, const Assertion& b, const char* op) {
  if (!(a.signature() == b.signature()) || !(a.horizon() == b.horizon()))
    throw Error(Errc::signature_mismatch,
                std::string(op) + " needs equal signatures: " + describe(a.signature()) + " vs " +
                    describe(b.signature()));
}

// Superset check including roles, as required by lift/project.
void require_sub_signature(const Signature& small, const Signature& large, const char* op) {
  for (const auto& p : small.ports()) {
    auto pos = large.position(p.name());
    if (!pos)
      throw Error(Errc::signature_mismatch, std::string(op) + ": port '" + p.name() +
                                                "' missing from " + describe(large));
    if (!(large.ports()[*pos] == p))
      throw Error(Errc::domain_conflict,
                  std::string(op) + ": port '" + p.name() + "' has a different domain");
    if (large.role(p.name()) != small.role(p.name()))
      throw Error(Errc::role_conflict,
                  std::string(op) + ": port '" + p.name() + "' changes role");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Assertion

Assertion::Assertion(Signature sig, Horizon horizon, RunSet runs, std::uint64_t cap)
    : sig_(std::move(sig)), horizon_(horizon), runs_(std::move(runs)), cap_(cap) {
  const RunSpace space(sig_, horizon_, cap_);
  if (runs_.size() != space.size())
    throw Error(Errc::invalid_argument, "run set size does not match the run universe");
}

Assertion Assertion::empty(Signature sig, Horizon horizon, std::uint64_t cap) {
  const RunSpace space(sig, horizon, cap);
  return Assertion(std::move(sig), horizon, RunSet(space.size()), cap);
}

Assertion Assertion::from_runs(Signature sig, Horizon horizon, const std::vector<Run>& runs,
                               std::uint64_t cap) {
  const RunSpace space(sig, horizon, cap);
  RunSet bits(space.size());
  for (const auto& r : runs) bits.set(space.encode(r));
  return Assertion(std::move(sig), horizon, std::move(bits), cap);
}

Assertion Assertion::from_indices(Signature sig, Horizon horizon,
                                  const std::vector<std::uint64_t>& indices, std::uint64_t cap) {
  const RunSpace space(sig, horizon, cap);
  RunSet bits(space.size());
  for (auto i : indices) {
    if (i >= space.size()) throw Error(Errc::invalid_argument, "run index out of range");
    bits.set(i);
  }
  return Assertion(std::move(sig), horizon, std::move(bits), cap);
}

bool Assertion::contains(const Run& run) const { return runs_.test(space().encode(run)); }

std::vector<std::uint64_t> Assertion::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(runs_.count());
  for (auto i = runs_.find_first(); i != RunSet::npos; i = runs_.find_next(i)) out.push_back(i);
  return out;
}

std::vector<Run> Assertion::decoded_runs() const {
  const RunSpace sp = space();
  std::vector<Run> out;
  for (auto i = runs_.find_first(); i != RunSet::npos; i = runs_.find_next(i))
    out.push_back(sp.decode(i));
  return out;
}

Assertion operator&(const Assertion& a, const Assertion& b) {
  require_same_space(a, b, "intersection");
  return Assertion(a.signature(), a.horizon(), a.runs() & b.runs(), std::max(a.cap(), b.cap()));
}

Assertion operator|(const Assertion& a, const Assertion& b) {
  require_same_space(a, b, "union");
  return Assertion(a.signature(), a.horizon(), a.runs() | b.runs(), std::max(a.cap(), b.cap()));
}

Assertion operator-(const Assertion& a, const Assertion& b) {
  require_same_space(a, b, "difference");
  return Assertion(a.signature(), a.horizon(), a.runs() - b.runs(), std::max(a.cap(), b.cap()));
}

bool is_subset(const Assertion& a, const Assertion& b) {
  require_same_space(a, b, "inclusion");
  return a.runs().is_subset_of(b.runs());
}

Assertion universe(const Signature& sig, Horizon horizon, std::uint64_t cap) {
  const RunSpace space(sig, horizon, cap);
  RunSet bits(space.size());
  bits.set();
  return Assertion(sig, horizon, std::move(bits), cap);
}

Assertion lift(const Assertion& e, const Signature& target) {
  require_sub_signature(e.signature(), target, "lift");
  if (e.signature() == target) return e;
  const RunSpace large(target, e.horizon(), e.cap());
  RunSet bits(large.size());
  const RunSet& src = e.runs();
  Restriction(target, large, e.signature()).for_each([&](std::uint64_t index, std::uint64_t small) {
    if (src.test(small)) bits.set(index);
  });
  return Assertion(target, e.horizon(), std::move(bits), e.cap());
}

Assertion project(const Assertion& e, const Signature& target) {
  require_sub_signature(target, e.signature(), "project");
  if (e.signature() == target) return e;
  const RunSpace large = e.space();
  const RunSpace small(target, e.horizon(), e.cap());
  RunSet bits(small.size());
  const RunSet& src = e.runs();
  Restriction(e.signature(), large, target).for_each([&](std::uint64_t index, std::uint64_t s) {
    if (src.test(index)) bits.set(s);
  });
  return Assertion(target, e.horizon(), std::move(bits), e.cap());
}

Assertion complement(const Assertion& e) {
  return Assertion(e.signature(), e.horizon(), ~e.runs(), e.cap());
}

Assertion product(const Assertion& a, const Assertion& b) {
  if (!(a.horizon() == b.horizon()))
    throw Error(Errc::horizon_mismatch, "product of assertions with different horizons");
  const Signature sig = unite(a.signature(), b.signature());
  const std::uint64_t cap = std::max(a.cap(), b.cap());
  return lift(with_cap(a, cap), sig) & lift(with_cap(b, cap), sig);
}

bool included_in(const Assertion& a, const Assertion& b, const Signature& sig) {
  if (!(a.horizon() == b.horizon()))
    throw Error(Errc::horizon_mismatch, "inclusion between assertions with different horizons");
#ifdef PCT_INJECT_FAULT
  // Mutation used to check that the verification suites notice a broken
  // inclusion test.
  return is_subset(lift(b, sig), lift(a, sig));
#else
  return is_subset(lift(a, sig), lift(b, sig));
#endif
}

Assertion relabel(const Assertion& e, const Signature& sig) {
  if (e.signature().names() != sig.names() || !sig.covers(e.signature()))
    throw Error(Errc::signature_mismatch, "relabel needs the same ports: " +
                                              describe(e.signature()) + " vs " + describe(sig));
  return Assertion(sig, e.horizon(), e.runs(), e.cap());
}

Assertion align(const Assertion& e, const Signature& sig) {
  if (!sig.covers(e.signature())) {
    for (const auto& p : e.signature().ports())
      if (sig.contains(p.name()) && !(sig.port(p.name()) == p))
        throw Error(Errc::domain_conflict, "port '" + p.name() + "' has a different domain");
    throw Error(Errc::signature_mismatch,
                describe(e.signature()) + " is not contained in " + describe(sig));
  }
  return lift(relabel(e, sig.restricted_to(e.signature().names())), sig);
}

Assertion rename_port(const Assertion& e, std::string_view from, const std::string& to) {
  const Signature& sig = e.signature();
  const Port& old_port = sig.port(from);
  if (from == to) return e;
  if (sig.contains(to))
    throw Error(Errc::invalid_argument, "cannot rename '" + std::string(from) + "' to existing port '" + to + "'");
  std::vector<Port> ports;
  std::vector<std::string> controlled;
  for (const auto& p : sig.ports()) {
    const bool is_from = p.name() == from;
    ports.push_back(is_from ? Port(to, old_port.domain()) : p);
    if (sig.is_controlled(p.name())) controlled.push_back(is_from ? to : p.name());
  }
  Signature renamed(std::move(ports), controlled);
  const RunSpace src = e.space();
  const RunSpace dst(renamed, e.horizon(), e.cap());
  RunSet bits(dst.size());
  for (auto i = e.runs().find_first(); i != RunSet::npos; i = e.runs().find_next(i)) {
    Run r = src.decode(i);
    auto node = r.histories.extract(std::string(from));
    node.key() = to;
    r.histories.insert(std::move(node));
    bits.set(dst.encode(r));
  }
  return Assertion(std::move(renamed), e.horizon(), std::move(bits), e.cap());
}

Assertion with_cap(const Assertion& e, std::uint64_t cap) {
  return Assertion(e.signature(), e.horizon(), e.runs(), cap);
}

}  // namespace pct
