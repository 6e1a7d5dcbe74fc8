#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pct/rational.hpp"

namespace pct::speclang {

struct Location {
  int line = 1;
  int column = 1;
};

struct Span {
  Location begin;
  Location end;
};

// ---------------------------------------------------------------------------
// Trace expressions

/// Right-hand or left-hand side of `==` / `!=`.
struct Operand {
  enum class Kind { name, literal, prev };
  Kind kind = Kind::name;
  std::string text;   // port/value name, literal spelling, or prev's port
  std::string init;   // prev only: value used at step 0
  Span span;

  friend bool operator==(const Operand& a, const Operand& b) {
    return a.kind == b.kind && a.text == b.text && a.init == b.init;
  }
};

/// One explicit run: a history for each named port.
struct RunLiteral {
  std::vector<std::pair<std::string, std::vector<std::string>>> histories;
  Span span;

  friend bool operator==(const RunLiteral& a, const RunLiteral& b) {
    return a.histories == b.histories;
  }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
  truth,       // true
  falsity,     // false
  ref,         // boolean port or predicate name
  prev_ref,    // prev(x init v) of a boolean port, as a formula
  equals,      // lhs == rhs
  not_equals,  // lhs != rhs
  negation,
  conjunction,
  disjunction,
  implication,
  equivalence,
  always,
  never,
  eventually,
  at,
  runs,        // runs { ... }
};

struct Expr {
  ExprKind kind = ExprKind::truth;
  std::string name;              // ref
  Operand lhs, rhs;              // equals / not_equals; prev_ref uses lhs
  int step = 0;                  // at
  ExprPtr left, right;           // unary operators use `left`
  std::vector<RunLiteral> runs;  // runs
  Span span;
};

/// Structural equality; source spans are ignored.
bool same(const Expr& a, const Expr& b);
bool same(const ExprPtr& a, const ExprPtr& b);

ExprPtr make_truth(bool value);
ExprPtr make_ref(std::string name);
ExprPtr make_unary(ExprKind kind, ExprPtr operand);
ExprPtr make_binary(ExprKind kind, ExprPtr left, ExprPtr right);

// ---------------------------------------------------------------------------
// Declarations

enum class DeclaredRole { unspecified, controlled, uncontrolled };

struct PortDecl {
  std::string name;
  bool boolean = true;               // `bool`, else the explicit value list
  std::vector<std::string> values;
  DeclaredRole role = DeclaredRole::unspecified;
  std::optional<Rational> bernoulli; // `prob bernoulli(p)`
  Span span;
};

struct PredicateDecl {
  std::string name;
  ExprPtr body;
  Span span;
};

struct TableEntry {
  RunLiteral history;
  Rational weight;
};

struct DistDecl {
  std::string name;
  std::vector<std::string> ports;
  std::optional<Rational> bernoulli;  // else `table`
  std::vector<TableEntry> table;
  Span span;
};

struct ContractDecl {
  std::string name;
  std::optional<std::vector<std::string>> ports;
  std::optional<std::vector<std::string>> controls;
  ExprPtr assume;
  ExprPtr guarantee;
  Span span;
};

struct ImplDecl {
  std::string name;
  std::optional<std::vector<std::string>> ports;
  std::optional<std::vector<std::string>> controls;
  ExprPtr behavior;
  Span span;
};

struct ProbContractDecl {
  std::string name;
  std::string contract;
  std::vector<std::string> prob;
  std::optional<std::string> dist;
  Span span;
};

struct Document {
  std::optional<int> horizon;
  Span horizon_span;
  std::vector<PortDecl> ports;
  std::vector<PredicateDecl> predicates;
  std::vector<DistDecl> dists;
  std::vector<ContractDecl> contracts;
  std::vector<ImplDecl> impls;
  std::vector<ProbContractDecl> prob_contracts;

  bool empty() const {
    return !horizon && ports.empty() && predicates.empty() && dists.empty() &&
           contracts.empty() && impls.empty() && prob_contracts.empty();
  }
};

/// Structural equality, independent of declaration order and spans.
bool same(const Document& a, const Document& b);

}  // namespace pct::speclang
