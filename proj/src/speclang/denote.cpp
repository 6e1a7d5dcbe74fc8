#include "pct/speclang/denote.hpp"

#include <map>
#include <set>

#include "pct/errors.hpp"
#include "pct/speclang/printer.hpp"

namespace pct::speclang {

namespace {

// One run set per step: bit i of steps[t] says whether the formula holds on
// run i at step t.
using Steps = std::vector<RunSet>;

class Denoter {
 public:
  Denoter(const Document& doc, const Signature& sig, Horizon horizon, std::uint64_t cap)
      : doc_(doc), sig_(sig), space_(sig, horizon, cap), steps_(horizon.steps()) {
    for (const auto& p : doc.ports) port_names_.insert(p.name);
    for (const auto& p : doc.predicates) predicates_[p.name] = &p;
  }

  Steps eval(const Expr& e, int depth = 0) {
    if (depth > 1000) throw Error(Errc::invalid_argument, "predicate definitions are cyclic");
    switch (e.kind) {
      case ExprKind::truth:
        return constant(true);
      case ExprKind::falsity:
        return constant(false);
      case ExprKind::ref: {
        auto it = predicates_.find(e.name);
        if (it != predicates_.end()) return eval(*it->second->body, depth + 1);
        Operand o;
        o.text = e.name;
        return atom(o, true_literal());
      }
      case ExprKind::prev_ref:
        return atom(e.lhs, true_literal());
      case ExprKind::equals:
        return atom(e.lhs, e.rhs);
      case ExprKind::not_equals:
        return negate(atom(e.lhs, e.rhs));
      case ExprKind::negation:
        return negate(eval(*e.left, depth + 1));
      case ExprKind::conjunction:
      case ExprKind::disjunction:
      case ExprKind::implication:
      case ExprKind::equivalence: {
        Steps l = eval(*e.left, depth + 1);
        Steps r = eval(*e.right, depth + 1);
        for (int t = 0; t < steps_; ++t) {
          switch (e.kind) {
            case ExprKind::conjunction: l[t] &= r[t]; break;
            case ExprKind::disjunction: l[t] |= r[t]; break;
            case ExprKind::implication: l[t] = ~l[t] | r[t]; break;
            default: l[t] = ~(l[t] ^ r[t]); break;
          }
        }
        return l;
      }
      case ExprKind::always:
      case ExprKind::never:
      case ExprKind::eventually: {
        Steps inner = eval(*e.left, depth + 1);
        if (e.kind == ExprKind::never) inner = negate(std::move(inner));
        const bool any = e.kind == ExprKind::eventually;
        // Suffix fold from the last step backwards.
        for (int t = steps_ - 2; t >= 0; --t) {
          if (any)
            inner[t] |= inner[t + 1];
          else
            inner[t] &= inner[t + 1];
        }
        return inner;
      }
      case ExprKind::at: {
        if (e.step < 0 || e.step >= steps_)
          throw Error(Errc::invalid_argument, "at(" + std::to_string(e.step) + ", ...) is beyond the horizon");
        Steps inner = eval(*e.left, depth + 1);
        return Steps(steps_, inner[e.step]);
      }
      case ExprKind::runs:
        return Steps(steps_, listed_runs(e.runs));
    }
    return constant(false);
  }

 private:
  Steps constant(bool value) const {
    RunSet s(space_.size());
    if (value) s.set();
    return Steps(steps_, s);
  }

  static Steps negate(Steps s) {
    for (auto& b : s) b.flip();
    return s;
  }

  static Operand true_literal() {
    Operand o;
    o.kind = Operand::Kind::literal;
    o.text = "true";
    return o;
  }

  std::size_t port_position(const std::string& name) const {
    auto pos = sig_.position(name);
    if (!pos) throw Error(Errc::signature_mismatch, "port '" + name + "' is not in the signature " + describe(sig_));
    return *pos;
  }

  std::uint32_t value_index(const Port& port, const std::string& value) const {
    auto idx = port.index_of(value);
    if (!idx) throw Error(Errc::invalid_argument, "value '" + value + "' is not in the domain of port '" + port.name() + "'");
    return *idx;
  }

  // How to read an operand's value index on a given run and step.
  struct Reader {
    bool is_constant = false;
    std::uint32_t constant = 0;
    std::size_t pos = 0;
    int shift = 0;           // 1 for prev
    std::uint32_t init = 0;  // prev at step 0
  };

  Reader reader(const Operand& o, const Port* domain_of) const {
    Reader r;
    const bool names_port = o.kind == Operand::Kind::prev ||
                            (o.kind == Operand::Kind::name && (port_names_.count(o.text) || !domain_of));
    if (!names_port) {
      if (!domain_of) throw Error(Errc::invalid_argument, "left side of a comparison must be a port");
      r.is_constant = true;
      r.constant = value_index(*domain_of, o.text);
      return r;
    }
    r.pos = port_position(o.text);
    if (o.kind == Operand::Kind::prev) {
      r.shift = 1;
      r.init = value_index(sig_.ports()[r.pos], o.init);
    }
    return r;
  }

  std::uint32_t read(const Reader& r, std::uint64_t index, int t) const {
    if (r.is_constant) return r.constant;
    if (t < r.shift) return r.init;
    return space_.value(index, r.pos, t - r.shift);
  }

  Steps atom(const Operand& lhs, const Operand& rhs) const {
    if (lhs.kind == Operand::Kind::literal)
      throw Error(Errc::invalid_argument, "left side of a comparison must be a port");
    const Reader l = reader(lhs, nullptr);
    const Port& lport = sig_.ports()[l.pos];
    const Reader r = reader(rhs, &lport);
    if (!r.is_constant && sig_.ports()[r.pos].domain() != lport.domain())
      throw Error(Errc::domain_conflict,
                  "ports '" + lport.name() + "' and '" + sig_.ports()[r.pos].name() + "' have different domains");
    Steps out(steps_, RunSet(space_.size()));
    for (std::uint64_t i = 0; i < space_.size(); ++i)
      for (int t = 0; t < steps_; ++t)
        if (read(l, i, t) == read(r, i, t)) out[t].set(i);
    return out;
  }

  RunSet listed_runs(const std::vector<RunLiteral>& runs) const {
    RunSet out(space_.size());
    for (const auto& lit : runs) {
      std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> fixed;
      for (const auto& [name, values] : lit.histories) {
        const std::size_t pos = port_position(name);
        if (static_cast<int>(values.size()) != steps_)
          throw Error(Errc::horizon_mismatch, "run literal " + print(lit) + " does not match the horizon");
        std::vector<std::uint32_t> idx;
        for (const auto& v : values) idx.push_back(value_index(sig_.ports()[pos], v));
        fixed.emplace_back(pos, std::move(idx));
      }
      for (std::uint64_t i = 0; i < space_.size(); ++i) {
        bool match = true;
        for (const auto& [pos, idx] : fixed)
          for (int t = 0; t < steps_ && match; ++t) match = space_.value(i, pos, t) == idx[t];
        if (match) out.set(i);
      }
    }
    return out;
  }

  const Document& doc_;
  const Signature& sig_;
  RunSpace space_;
  int steps_;
  std::set<std::string> port_names_;
  std::map<std::string, const PredicateDecl*> predicates_;
};

}  // namespace

Assertion denote(const Document& doc, const Expr& expr, const Signature& sig, Horizon horizon,
                 std::uint64_t cap) {
  Denoter d(doc, sig, horizon, cap);
  Steps s = d.eval(expr);
  return Assertion(sig, horizon, std::move(s.front()), cap);
}

}  // namespace pct::speclang
