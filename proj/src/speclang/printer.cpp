#include "pct/speclang/printer.hpp"

#include <algorithm>
#include <sstream>

namespace pct::speclang {

namespace {

// Binding strength; a child printed under a parent needing more gets parens.
int precedence(ExprKind kind) {
  switch (kind) {
    case ExprKind::implication:
    case ExprKind::equivalence:
      return 1;
    case ExprKind::disjunction:
      return 2;
    case ExprKind::conjunction:
      return 3;
    case ExprKind::negation:
      return 4;
    default:
      return 5;
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

std::string operand(const Operand& o) {
  if (o.kind == Operand::Kind::prev) return "prev(" + o.text + " init " + o.init + ")";
  return o.text;
}

void emit(std::string& out, const Expr& e, int need);

void emit_child(std::string& out, const Expr& e, int need) {
  if (precedence(e.kind) < need) {
    out += '(';
    emit(out, e, 0);
    out += ')';
  } else {
    emit(out, e, need);
  }
}

void emit(std::string& out, const Expr& e, int) {
  switch (e.kind) {
    case ExprKind::truth:
      out += "true";
      return;
    case ExprKind::falsity:
      out += "false";
      return;
    case ExprKind::ref:
      out += e.name;
      return;
    case ExprKind::prev_ref:
      out += operand(e.lhs);
      return;
    case ExprKind::equals:
    case ExprKind::not_equals:
      out += operand(e.lhs);
      out += e.kind == ExprKind::equals ? " == " : " != ";
      out += operand(e.rhs);
      return;
    case ExprKind::negation:
      out += "not ";
      emit_child(out, *e.left, 4);
      return;
    case ExprKind::conjunction:
    case ExprKind::disjunction: {
      const int p = precedence(e.kind);
      emit_child(out, *e.left, p);
      out += e.kind == ExprKind::conjunction ? " and " : " or ";
      emit_child(out, *e.right, p + 1);
      return;
    }
    case ExprKind::implication:
    case ExprKind::equivalence:
      emit_child(out, *e.left, 2);
      out += e.kind == ExprKind::implication ? " implies " : " iff ";
      emit_child(out, *e.right, 1);
      return;
    case ExprKind::always:
    case ExprKind::never:
    case ExprKind::eventually:
      out += e.kind == ExprKind::always ? "always(" : e.kind == ExprKind::never ? "never(" : "eventually(";
      emit(out, *e.left, 0);
      out += ')';
      return;
    case ExprKind::at:
      out += "at(" + std::to_string(e.step) + ", ";
      emit(out, *e.left, 0);
      out += ')';
      return;
    case ExprKind::runs: {
      out += "runs {";
      for (std::size_t i = 0; i < e.runs.size(); ++i) {
        out += i ? ", " : " ";
        out += print(e.runs[i]);
      }
      out += e.runs.empty() ? "}" : " }";
      return;
    }
  }
}

template <typename T>
std::vector<const T*> sorted(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& item : items) out.push_back(&item);
  std::stable_sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->name < b->name; });
  return out;
}

template <typename Decl>
void signature_clauses(std::ostringstream& out, const Decl& d) {
  if (d.ports) out << "  ports" << (d.ports->empty() ? "" : " ") << join(*d.ports) << ";\n";
  if (d.controls) out << "  controls" << (d.controls->empty() ? "" : " ") << join(*d.controls) << ";\n";
}

}  // namespace

std::string print(const Expr& expr) {
  std::string out;
  emit(out, expr, 0);
  return out;
}

std::string print(const RunLiteral& run) {
  std::string out = "(";
  for (std::size_t i = 0; i < run.histories.size(); ++i) {
    if (i) out += ", ";
    out += run.histories[i].first + " = [" + join(run.histories[i].second) + "]";
  }
  return out + ")";
}

std::string print(const Document& doc) {
  std::ostringstream out;
  bool section = false;
  auto gap = [&] {
    if (section) out << '\n';
    section = true;
  };

  if (doc.horizon) {
    gap();
    out << "horizon " << *doc.horizon << ";\n";
  }
  if (!doc.ports.empty()) {
    gap();
    for (const PortDecl* p : sorted(doc.ports)) {
      out << "port " << p->name << " : ";
      if (p->boolean)
        out << "bool";
      else
        out << '{' << join(p->values) << '}';
      if (p->role == DeclaredRole::controlled) out << " controlled";
      if (p->role == DeclaredRole::uncontrolled) out << " uncontrolled";
      if (p->bernoulli) out << " prob bernoulli(" << to_string(*p->bernoulli) << ')';
      out << ";\n";
    }
  }
  if (!doc.predicates.empty()) {
    gap();
    for (const PredicateDecl* p : sorted(doc.predicates))
      out << "predicate " << p->name << " = " << print(*p->body) << ";\n";
  }
  for (const DistDecl* d : sorted(doc.dists)) {
    gap();
    out << "dist " << d->name << " over (" << join(d->ports) << ") = ";
    if (d->bernoulli) {
      out << "bernoulli(" << to_string(*d->bernoulli) << ");\n";
      continue;
    }
    out << "table {\n";
    for (const auto& entry : d->table)
      out << "  " << print(entry.history) << " : " << to_string(entry.weight) << ";\n";
    out << "};\n";
  }
  for (const ContractDecl* c : sorted(doc.contracts)) {
    gap();
    out << "contract " << c->name << " {\n";
    signature_clauses(out, *c);
    out << "  assume " << print(*c->assume) << ";\n";
    out << "  guarantee " << print(*c->guarantee) << ";\n}\n";
  }
  for (const ImplDecl* m : sorted(doc.impls)) {
    gap();
    out << "impl " << m->name << " {\n";
    signature_clauses(out, *m);
    out << "  behavior " << print(*m->behavior) << ";\n}\n";
  }
  for (const ProbContractDecl* pc : sorted(doc.prob_contracts)) {
    gap();
    out << "probcontract " << pc->name << " {\n";
    out << "  contract " << pc->contract << ";\n";
    out << "  prob" << (pc->prob.empty() ? "" : " ") << join(pc->prob) << ";\n";
    if (pc->dist) out << "  dist " << *pc->dist << ";\n";
    out << "}\n";
  }
  return out.str();
}

}  // namespace pct::speclang
