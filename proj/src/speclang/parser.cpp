#include "pct/speclang/parser.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "pct/speclang/lexer.hpp"

namespace pct::speclang {

namespace {

constexpr std::array kKeywords = {
    "horizon", "port",   "bool",       "controlled", "uncontrolled", "prob",    "bernoulli",
    "predicate", "dist", "over",       "table",      "contract",     "impl",    "probcontract",
    "ports",   "controls", "assume",   "guarantee",  "behavior",     "true",    "false",
    "not",     "and",    "or",         "implies",    "iff",          "always",  "never",
    "eventually", "at",  "prev",       "init",       "runs"};

constexpr int kMaxDepth = 200;

[[noreturn]] void fail(DiagKind kind, Span span, const std::string& msg) {
  throw SpecError({kind, span, msg});
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Document document() {
    Document doc;
    while (peek().kind != TokenKind::end) {
      const Token& t = peek();
      if (t.kind != TokenKind::identifier) fail_expected("a declaration");
      if (t.text == "horizon") {
        horizon(doc);
      } else if (t.text == "port") {
        doc.ports.push_back(port());
      } else if (t.text == "predicate") {
        doc.predicates.push_back(predicate());
      } else if (t.text == "dist") {
        doc.dists.push_back(dist());
      } else if (t.text == "contract") {
        doc.contracts.push_back(contract());
      } else if (t.text == "impl") {
        doc.impls.push_back(impl());
      } else if (t.text == "probcontract") {
        doc.prob_contracts.push_back(prob_contract());
      } else {
        fail(DiagKind::syntax, t.span, "unknown declaration '" + t.text + "'");
      }
    }
    return doc;
  }

 private:
  // -- token plumbing -------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = peek();
    last_end_ = t.span.end;
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at(TokenKind k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const {
    return peek().kind == TokenKind::identifier && peek().text == w;
  }
  bool accept(TokenKind k) {
    if (!at(k)) return false;
    take();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail_expected(const std::string& what) const {
    const Token& t = peek();
    const std::string found = t.kind == TokenKind::end ? "end of input" : "'" + t.text + "'";
    fail(DiagKind::syntax, t.span, "expected " + what + ", found " + found);
  }

  const Token& expect(TokenKind k) {
    if (!at(k)) fail_expected(std::string(spelling(k)));
    return take();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail_expected("'" + std::string(w) + "'");
    take();
  }

  std::string name(const char* what) {
    if (!at(TokenKind::identifier)) fail_expected(what);
    if (is_keyword(peek().text))
      fail(DiagKind::syntax, peek().span, "'" + peek().text + "' is a reserved word, expected " + what);
    return take().text;
  }

  std::vector<std::string> name_list(const char* what) {
    std::vector<std::string> out;
    if (at(TokenKind::semicolon) || at(TokenKind::rparen)) return out;
    out.push_back(name(what));
    while (accept(TokenKind::comma)) out.push_back(name(what));
    return out;
  }

  // A domain value: identifier, integer, true or false.
  std::string value() {
    if (at(TokenKind::number)) {
      const Token& t = peek();
      if (t.text.find_first_of("/.") != std::string::npos)
        fail(DiagKind::syntax, t.span, "domain values are names or integers, not '" + t.text + "'");
      return take().text;
    }
    if (at_word("true") || at_word("false")) return take().text;
    return name("a value");
  }

  Rational number() {
    if (!at(TokenKind::number)) fail_expected("a number");
    const Token& t = peek();
    try {
      Rational r = parse_rational(t.text);
      take();
      return r;
    } catch (const Error&) {
      fail(DiagKind::syntax, t.span, "invalid number '" + t.text + "'");
    }
  }

  Span span_from(Location begin) const { return {begin, last_end_}; }

  // -- declarations ---------------------------------------------------------

  void horizon(Document& doc) {
    const Location begin = peek().span.begin;
    expect_word("horizon");
    const Token& t = expect(TokenKind::number);
    if (t.text.find_first_of("/.") != std::string::npos || t.text.size() > 6)
      fail(DiagKind::semantic, t.span, "horizon must be a positive integer");
    const int steps = std::stoi(t.text);
    if (steps < 1) fail(DiagKind::semantic, t.span, "horizon must be at least 1");
    expect(TokenKind::semicolon);
    if (doc.horizon) {
      if (*doc.horizon != steps)
        fail(DiagKind::semantic, span_from(begin),
             "horizon conflict: " + std::to_string(steps) + " here, " + std::to_string(*doc.horizon) +
                 " at line " + std::to_string(doc.horizon_span.begin.line));
      fail(DiagKind::semantic, span_from(begin), "duplicate horizon declaration");
    }
    doc.horizon = steps;
    doc.horizon_span = span_from(begin);
  }

  PortDecl port() {
    PortDecl d;
    const Location begin = peek().span.begin;
    expect_word("port");
    d.name = name("a port name");
    expect(TokenKind::colon);
    if (accept_word("bool")) {
      d.boolean = true;
    } else if (accept(TokenKind::lbrace)) {
      d.boolean = false;
      d.values.push_back(value());
      while (accept(TokenKind::comma)) d.values.push_back(value());
      expect(TokenKind::rbrace);
    } else {
      fail_expected("'bool' or a value list");
    }
    if (accept_word("controlled"))
      d.role = DeclaredRole::controlled;
    else if (accept_word("uncontrolled"))
      d.role = DeclaredRole::uncontrolled;
    if (accept_word("prob")) {
      expect_word("bernoulli");
      expect(TokenKind::lparen);
      d.bernoulli = number();
      expect(TokenKind::rparen);
    }
    expect(TokenKind::semicolon);
    d.span = span_from(begin);
    return d;
  }

  PredicateDecl predicate() {
    PredicateDecl d;
    const Location begin = peek().span.begin;
    expect_word("predicate");
    d.name = name("a predicate name");
    expect(TokenKind::assign);
    d.body = expr();
    expect(TokenKind::semicolon);
    d.span = span_from(begin);
    return d;
  }

  DistDecl dist() {
    DistDecl d;
    const Location begin = peek().span.begin;
    expect_word("dist");
    d.name = name("a distribution name");
    expect_word("over");
    expect(TokenKind::lparen);
    d.ports = name_list("a port name");
    expect(TokenKind::rparen);
    expect(TokenKind::assign);
    if (accept_word("bernoulli")) {
      expect(TokenKind::lparen);
      d.bernoulli = number();
      expect(TokenKind::rparen);
    } else if (accept_word("table")) {
      expect(TokenKind::lbrace);
      while (!at(TokenKind::rbrace)) {
        TableEntry e;
        e.history = run_literal();
        expect(TokenKind::colon);
        e.weight = number();
        expect(TokenKind::semicolon);
        d.table.push_back(std::move(e));
      }
      expect(TokenKind::rbrace);
    } else {
      fail_expected("'bernoulli' or 'table'");
    }
    expect(TokenKind::semicolon);
    d.span = span_from(begin);
    return d;
  }

  template <typename Decl>
  void signature_clauses(Decl& d) {
    if (accept_word("ports")) {
      d.ports = name_list("a port name");
      expect(TokenKind::semicolon);
    }
    if (accept_word("controls")) {
      d.controls = name_list("a port name");
      expect(TokenKind::semicolon);
    }
  }

  ContractDecl contract() {
    ContractDecl d;
    const Location begin = peek().span.begin;
    expect_word("contract");
    d.name = name("a contract name");
    expect(TokenKind::lbrace);
    signature_clauses(d);
    expect_word("assume");
    d.assume = expr();
    expect(TokenKind::semicolon);
    expect_word("guarantee");
    d.guarantee = expr();
    expect(TokenKind::semicolon);
    expect(TokenKind::rbrace);
    d.span = span_from(begin);
    return d;
  }

  ImplDecl impl() {
    ImplDecl d;
    const Location begin = peek().span.begin;
    expect_word("impl");
    d.name = name("an implementation name");
    expect(TokenKind::lbrace);
    signature_clauses(d);
    expect_word("behavior");
    d.behavior = expr();
    expect(TokenKind::semicolon);
    expect(TokenKind::rbrace);
    d.span = span_from(begin);
    return d;
  }

  ProbContractDecl prob_contract() {
    ProbContractDecl d;
    const Location begin = peek().span.begin;
    expect_word("probcontract");
    d.name = name("a probabilistic contract name");
    expect(TokenKind::lbrace);
    expect_word("contract");
    d.contract = name("a contract name");
    expect(TokenKind::semicolon);
    expect_word("prob");
    d.prob = name_list("a port name");
    expect(TokenKind::semicolon);
    if (accept_word("dist")) {
      d.dist = name("a distribution name");
      expect(TokenKind::semicolon);
    }
    expect(TokenKind::rbrace);
    d.span = span_from(begin);
    return d;
  }

  // (a = [v, ...], b = [v, ...])
  RunLiteral run_literal() {
    RunLiteral r;
    const Location begin = peek().span.begin;
    expect(TokenKind::lparen);
    if (!at(TokenKind::rparen)) {
      do {
        std::pair<std::string, std::vector<std::string>> h;
        h.first = name("a port name");
        expect(TokenKind::assign);
        expect(TokenKind::lbracket);
        if (!at(TokenKind::rbracket)) {
          h.second.push_back(value());
          while (accept(TokenKind::comma)) h.second.push_back(value());
        }
        expect(TokenKind::rbracket);
        r.histories.push_back(std::move(h));
      } while (accept(TokenKind::comma));
    }
    expect(TokenKind::rparen);
    r.span = span_from(begin);
    return r;
  }

  // -- expressions ----------------------------------------------------------

  struct DepthGuard {
    DepthGuard(int& depth, const Token& at) : depth_(depth) {
      if (++depth_ > kMaxDepth) fail(DiagKind::syntax, at.span, "expression nested too deeply");
    }
    ~DepthGuard() { --depth_; }
    int& depth_;
  };

  std::shared_ptr<Expr> node(ExprKind kind, Location begin) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->span.begin = begin;
    return e;
  }

  ExprPtr finish(std::shared_ptr<Expr> e) {
    e->span.end = last_end_;
    return e;
  }

  ExprPtr expr() { return implication(); }

  // Right-associative, lowest precedence.
  ExprPtr implication() {
    DepthGuard guard(depth_, peek());
    const Location begin = peek().span.begin;
    ExprPtr left = disjunction();
    ExprKind kind;
    if (at_word("implies"))
      kind = ExprKind::implication;
    else if (at_word("iff"))
      kind = ExprKind::equivalence;
    else
      return left;
    take();
    auto e = node(kind, begin);
    e->left = std::move(left);
    e->right = implication();
    return finish(e);
  }

  ExprPtr disjunction() {
    const Location begin = peek().span.begin;
    ExprPtr left = conjunction();
    while (accept_word("or")) {
      auto e = node(ExprKind::disjunction, begin);
      e->left = std::move(left);
      e->right = conjunction();
      left = finish(e);
    }
    return left;
  }

  ExprPtr conjunction() {
    const Location begin = peek().span.begin;
    ExprPtr left = unary();
    while (accept_word("and")) {
      auto e = node(ExprKind::conjunction, begin);
      e->left = std::move(left);
      e->right = unary();
      left = finish(e);
    }
    return left;
  }

  ExprPtr unary() {
    DepthGuard guard(depth_, peek());
    const Location begin = peek().span.begin;
    if (accept_word("not")) {
      auto e = node(ExprKind::negation, begin);
      e->left = unary();
      return finish(e);
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    const Location begin = t.span.begin;
    if (accept(TokenKind::lparen)) {
      ExprPtr inner = expr();
      expect(TokenKind::rparen);
      return inner;
    }
    if (t.kind != TokenKind::identifier) fail_expected("an expression");
    if (t.text == "true" || t.text == "false") {
      const bool v = t.text == "true";
      take();
      auto e = node(v ? ExprKind::truth : ExprKind::falsity, begin);
      return finish(e);
    }
    if (t.text == "always" || t.text == "never" || t.text == "eventually") {
      const ExprKind kind = t.text == "always" ? ExprKind::always
                            : t.text == "never" ? ExprKind::never
                                                : ExprKind::eventually;
      take();
      auto e = node(kind, begin);
      expect(TokenKind::lparen);
      e->left = expr();
      expect(TokenKind::rparen);
      return finish(e);
    }
    if (t.text == "at") {
      take();
      auto e = node(ExprKind::at, begin);
      expect(TokenKind::lparen);
      const Token& n = expect(TokenKind::number);
      if (n.text.find_first_of("/.") != std::string::npos || n.text.size() > 6)
        fail(DiagKind::syntax, n.span, "step index must be a non-negative integer");
      e->step = std::stoi(n.text);
      expect(TokenKind::comma);
      e->left = expr();
      expect(TokenKind::rparen);
      return finish(e);
    }
    if (t.text == "runs") {
      take();
      auto e = node(ExprKind::runs, begin);
      expect(TokenKind::lbrace);
      if (!at(TokenKind::rbrace)) {
        e->runs.push_back(run_literal());
        while (accept(TokenKind::comma)) e->runs.push_back(run_literal());
      }
      expect(TokenKind::rbrace);
      return finish(e);
    }
    Operand lhs = operand();
    if (at(TokenKind::equal) || at(TokenKind::not_equal)) {
      const ExprKind kind = at(TokenKind::equal) ? ExprKind::equals : ExprKind::not_equals;
      take();
      auto e = node(kind, begin);
      e->lhs = std::move(lhs);
      e->rhs = operand();
      return finish(e);
    }
    if (lhs.kind == Operand::Kind::prev) {
      auto e = node(ExprKind::prev_ref, begin);
      e->lhs = std::move(lhs);
      return finish(e);
    }
    if (lhs.kind == Operand::Kind::literal)
      fail(DiagKind::syntax, lhs.span, "a value on its own is not a formula");
    auto e = node(ExprKind::ref, begin);
    e->name = lhs.text;
    return finish(e);
  }

  // name | integer | true | false | prev(name init value)
  Operand operand() {
    Operand o;
    const Location begin = peek().span.begin;
    if (at_word("prev")) {
      take();
      o.kind = Operand::Kind::prev;
      expect(TokenKind::lparen);
      o.text = name("a port name");
      expect_word("init");
      o.init = value();
      expect(TokenKind::rparen);
    } else if (at(TokenKind::number) || at_word("true") || at_word("false")) {
      o.kind = Operand::Kind::literal;
      o.text = value();
    } else {
      o.kind = Operand::Kind::name;
      o.text = name("a port, predicate or value");
    }
    o.span = span_from(begin);
    return o;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Location last_end_;
  int depth_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution and semantic checks

class Checker {
 public:
  explicit Checker(const Document& doc) : doc_(doc) {}

  void run() {
    declare_names();
    for (const auto& p : doc_.ports) check_port(p);
    for (const auto& p : doc_.predicates) check_expr(*p.body);
    check_predicate_cycles();
    const bool needs_horizon = !doc_.contracts.empty() || !doc_.impls.empty() || !doc_.dists.empty() ||
                               !doc_.prob_contracts.empty() ||
                               std::any_of(doc_.ports.begin(), doc_.ports.end(),
                                           [](const PortDecl& p) { return p.bernoulli.has_value(); });
    if (needs_horizon && !doc_.horizon) fail(DiagKind::semantic, first_span(), "missing 'horizon' declaration");
    for (const auto& d : doc_.dists) check_dist(d);
    for (const auto& c : doc_.contracts) {
      check_expr(*c.assume);
      check_expr(*c.guarantee);
      check_signature(c.ports, c.controls, {c.assume.get(), c.guarantee.get()}, c.span);
    }
    for (const auto& m : doc_.impls) {
      check_expr(*m.behavior);
      check_signature(m.ports, m.controls, {m.behavior.get()}, m.span);
    }
    for (const auto& pc : doc_.prob_contracts) check_prob_contract(pc);
  }

 private:
  enum class Kind { port, predicate, dist, contract, impl, prob_contract };

  Span first_span() const {
    if (!doc_.contracts.empty()) return doc_.contracts.front().span;
    if (!doc_.impls.empty()) return doc_.impls.front().span;
    if (!doc_.dists.empty()) return doc_.dists.front().span;
    if (!doc_.prob_contracts.empty()) return doc_.prob_contracts.front().span;
    return doc_.ports.empty() ? Span{} : doc_.ports.front().span;
  }

  void declare(const std::string& name, Kind kind, Span span) {
    if (is_keyword(name)) fail(DiagKind::syntax, span, "'" + name + "' is a reserved word");
    auto [it, fresh] = kinds_.emplace(name, kind);
    if (!fresh) fail(DiagKind::resolution, span, "duplicate name '" + name + "'");
  }

  void declare_names() {
    for (const auto& p : doc_.ports) {
      declare(p.name, Kind::port, p.span);
      ports_[p.name] = &p;
    }
    for (const auto& p : doc_.predicates) {
      declare(p.name, Kind::predicate, p.span);
      predicates_[p.name] = &p;
    }
    for (const auto& d : doc_.dists) declare(d.name, Kind::dist, d.span);
    for (const auto& c : doc_.contracts) {
      declare(c.name, Kind::contract, c.span);
      contracts_[c.name] = &c;
    }
    for (const auto& m : doc_.impls) declare(m.name, Kind::impl, m.span);
    for (const auto& pc : doc_.prob_contracts) declare(pc.name, Kind::prob_contract, pc.span);
  }

  std::vector<std::string> domain(const PortDecl& p) const {
    return p.boolean ? std::vector<std::string>{"false", "true"} : p.values;
  }

  const PortDecl& port_named(const std::string& name, Span span) const {
    auto it = ports_.find(name);
    if (it == ports_.end()) {
      if (kinds_.count(name)) fail(DiagKind::semantic, span, "'" + name + "' is not a port");
      fail(DiagKind::resolution, span, "undefined port '" + name + "'");
    }
    return *it->second;
  }

  void check_value(const PortDecl& p, const std::string& v, Span span) const {
    auto d = domain(p);
    if (std::find(d.begin(), d.end(), v) == d.end())
      fail(DiagKind::semantic, span, "value '" + v + "' is not in the domain of port '" + p.name + "'");
  }

  void check_port(const PortDecl& p) const {
    if (!p.boolean) {
      if (p.values.empty()) fail(DiagKind::semantic, p.span, "port '" + p.name + "' has an empty domain");
      std::set<std::string> seen;
      for (const auto& v : p.values)
        if (!seen.insert(v).second)
          fail(DiagKind::semantic, p.span, "port '" + p.name + "' lists value '" + v + "' twice");
    }
    if (p.bernoulli) {
      if (!p.boolean && !(p.values == std::vector<std::string>{"false", "true"}))
        fail(DiagKind::semantic, p.span, "bernoulli needs a boolean port, '" + p.name + "' is not");
      if (*p.bernoulli < 0 || *p.bernoulli > 1)
        fail(DiagKind::semantic, p.span, "probability outside [0, 1]");
    }
    if (p.bernoulli && p.role == DeclaredRole::controlled)
      fail(DiagKind::semantic, p.span, "a probabilistic port cannot be controlled");
  }

  void check_run_literal(const RunLiteral& r) const {
    std::set<std::string> seen;
    for (const auto& [name, values] : r.histories) {
      const PortDecl& p = port_named(name, r.span);
      if (!seen.insert(name).second)
        fail(DiagKind::semantic, r.span, "port '" + name + "' appears twice in one run");
      if (doc_.horizon && static_cast<int>(values.size()) != *doc_.horizon)
        fail(DiagKind::semantic, r.span,
             "history of '" + name + "' has " + std::to_string(values.size()) + " steps, horizon is " +
                 std::to_string(*doc_.horizon));
      for (const auto& v : values) check_value(p, v, r.span);
    }
  }

  static std::set<std::string> port_set(const RunLiteral& r) {
    std::set<std::string> out;
    for (const auto& h : r.histories) out.insert(h.first);
    return out;
  }

  // Domain of an operand used on the left of a comparison.
  const PortDecl& operand_port(const Operand& o) const {
    if (o.kind == Operand::Kind::literal)
      fail(DiagKind::semantic, o.span, "left side of a comparison must be a port");
    const PortDecl& p = port_named(o.text, o.span);
    if (o.kind == Operand::Kind::prev) check_value(p, o.init, o.span);
    return p;
  }

  void check_expr(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::truth:
      case ExprKind::falsity:
        return;
      case ExprKind::ref: {
        if (predicates_.count(e.name)) return;
        const PortDecl& p = port_named(e.name, e.span);
        if (domain(p) != std::vector<std::string>{"false", "true"})
          fail(DiagKind::semantic, e.span, "port '" + e.name + "' is not boolean; compare it with '=='");
        return;
      }
      case ExprKind::prev_ref: {
        const PortDecl& p = operand_port(e.lhs);
        if (domain(p) != std::vector<std::string>{"false", "true"})
          fail(DiagKind::semantic, e.span, "port '" + p.name + "' is not boolean; compare it with '=='");
        return;
      }
      case ExprKind::equals:
      case ExprKind::not_equals: {
        const PortDecl& left = operand_port(e.lhs);
        const Operand& r = e.rhs;
        if (r.kind == Operand::Kind::literal) {
          check_value(left, r.text, r.span);
        } else if (r.kind == Operand::Kind::prev || ports_.count(r.text)) {
          const PortDecl& right = operand_port(r);
          if (domain(left) != domain(right))
            fail(DiagKind::semantic, e.span,
                 "domain mismatch: ports '" + left.name + "' and '" + right.name + "' have different domains");
        } else {
          auto d = domain(left);
          if (std::find(d.begin(), d.end(), r.text) == d.end())
            fail(DiagKind::resolution, r.span,
                 "undefined name '" + r.text + "' (not a port, nor a value of '" + left.name + "')");
        }
        return;
      }
      case ExprKind::at:
        if (doc_.horizon && e.step >= *doc_.horizon)
          fail(DiagKind::semantic, e.span, "step " + std::to_string(e.step) + " is beyond the horizon");
        check_expr(*e.left);
        return;
      case ExprKind::runs: {
        for (const auto& r : e.runs) {
          check_run_literal(r);
          if (port_set(r) != port_set(e.runs.front()))
            fail(DiagKind::semantic, r.span, "all runs of a 'runs' set must assign the same ports");
        }
        return;
      }
      default:
        check_expr(*e.left);
        if (e.right) check_expr(*e.right);
        return;
    }
  }

  void check_predicate_cycles() const {
    std::map<std::string, int> state;  // 1 visiting, 2 done
    std::function<void(const Expr&, const PredicateDecl&)> walk;
    std::function<void(const PredicateDecl&)> visit = [&](const PredicateDecl& p) {
      int& s = state[p.name];
      if (s == 2) return;
      if (s == 1) fail(DiagKind::semantic, p.span, "predicate '" + p.name + "' refers to itself");
      s = 1;
      walk(*p.body, p);
      state[p.name] = 2;
    };
    walk = [&](const Expr& e, const PredicateDecl& owner) {
      if (e.kind == ExprKind::ref) {
        auto it = predicates_.find(e.name);
        if (it != predicates_.end()) visit(*it->second);
      }
      if (e.left) walk(*e.left, owner);
      if (e.right) walk(*e.right, owner);
    };
    for (const auto& p : doc_.predicates) visit(p);
  }

  void check_dist(const DistDecl& d) const {
    std::set<std::string> ports;
    for (const auto& name : d.ports) {
      port_named(name, d.span);
      if (!ports.insert(name).second) fail(DiagKind::semantic, d.span, "port '" + name + "' listed twice");
    }
    if (d.bernoulli) {
      if (d.ports.size() != 1) fail(DiagKind::semantic, d.span, "bernoulli ranges over exactly one port");
      const PortDecl& p = port_named(d.ports.front(), d.span);
      if (domain(p) != std::vector<std::string>{"false", "true"})
        fail(DiagKind::semantic, d.span, "bernoulli needs a boolean port, '" + p.name + "' is not");
      if (*d.bernoulli < 0 || *d.bernoulli > 1) fail(DiagKind::semantic, d.span, "probability outside [0, 1]");
      return;
    }
    Rational sum = 0;
    std::set<std::vector<std::pair<std::string, std::vector<std::string>>>> seen;
    for (const auto& entry : d.table) {
      check_run_literal(entry.history);
      if (port_set(entry.history) != ports)
        fail(DiagKind::semantic, entry.history.span, "table entry must assign exactly the distribution's ports");
      auto key = entry.history.histories;
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) fail(DiagKind::semantic, entry.history.span, "history listed twice");
      if (entry.weight < 0) fail(DiagKind::semantic, entry.history.span, "negative probability");
      sum += entry.weight;
    }
    if (sum != 1)
      fail(DiagKind::semantic, d.span, "probabilities of '" + d.name + "' sum to " + to_string(sum) + ", not 1");
  }

  void check_signature(const std::optional<std::vector<std::string>>& ports,
                       const std::optional<std::vector<std::string>>& controls,
                       std::initializer_list<const Expr*> exprs, Span span) const {
    std::set<std::string> used;
    for (const Expr* e : exprs)
      for (auto& p : referenced_ports(doc_, *e)) used.insert(p);
    std::set<std::string> sig;
    if (ports) {
      for (const auto& name : *ports) {
        port_named(name, span);
        if (!sig.insert(name).second) fail(DiagKind::semantic, span, "port '" + name + "' listed twice");
      }
      for (const auto& name : used)
        if (!sig.count(name))
          fail(DiagKind::semantic, span, "port '" + name + "' is used but missing from the 'ports' list");
    } else {
      sig = used;
    }
    if (controls) {
      std::set<std::string> seen;
      for (const auto& name : *controls) {
        port_named(name, span);
        if (!sig.count(name)) fail(DiagKind::semantic, span, "controlled port '" + name + "' is not in the signature");
        if (!seen.insert(name).second) fail(DiagKind::semantic, span, "port '" + name + "' listed twice");
        if (ports_.at(name)->bernoulli)
          fail(DiagKind::semantic, span, "probabilistic port '" + name + "' cannot be controlled");
      }
    }
  }

  std::set<std::string> contract_ports(const ContractDecl& c) const {
    if (c.ports) return {c.ports->begin(), c.ports->end()};
    std::set<std::string> out;
    for (auto& p : referenced_ports(doc_, *c.assume)) out.insert(p);
    for (auto& p : referenced_ports(doc_, *c.guarantee)) out.insert(p);
    return out;
  }

  void check_prob_contract(const ProbContractDecl& pc) const {
    auto it = contracts_.find(pc.contract);
    if (it == contracts_.end()) {
      if (kinds_.count(pc.contract)) fail(DiagKind::semantic, pc.span, "'" + pc.contract + "' is not a contract");
      fail(DiagKind::resolution, pc.span, "undefined contract '" + pc.contract + "'");
    }
    const auto sig = contract_ports(*it->second);
    std::set<std::string> prob;
    for (const auto& name : pc.prob) {
      port_named(name, pc.span);
      if (!prob.insert(name).second) fail(DiagKind::semantic, pc.span, "port '" + name + "' listed twice");
      if (!sig.count(name))
        fail(DiagKind::semantic, pc.span, "probabilistic port '" + name + "' is not in contract '" + pc.contract + "'");
    }
    if (pc.dist) {
      auto dit = std::find_if(doc_.dists.begin(), doc_.dists.end(),
                              [&](const DistDecl& d) { return d.name == *pc.dist; });
      if (dit == doc_.dists.end()) {
        if (kinds_.count(*pc.dist)) fail(DiagKind::semantic, pc.span, "'" + *pc.dist + "' is not a distribution");
        fail(DiagKind::resolution, pc.span, "undefined distribution '" + *pc.dist + "'");
      }
      if (std::set<std::string>(dit->ports.begin(), dit->ports.end()) != prob)
        fail(DiagKind::semantic, pc.span, "distribution '" + *pc.dist + "' does not range over the probabilistic ports");
    } else {
      for (const auto& name : pc.prob)
        if (!ports_.at(name)->bernoulli)
          fail(DiagKind::semantic, pc.span, "port '" + name + "' has no distribution; add 'prob bernoulli(p)' or a 'dist'");
    }
  }

  const Document& doc_;
  std::map<std::string, Kind> kinds_;
  std::map<std::string, const PortDecl*> ports_;
  std::map<std::string, const PredicateDecl*> predicates_;
  std::map<std::string, const ContractDecl*> contracts_;
};

void collect_ports(const Document& doc, const Expr& e, std::set<std::string>& out,
                   std::set<std::string>& visited_predicates, int depth) {
  if (depth > 4 * kMaxDepth) return;
  auto is_port = [&](const std::string& n) {
    return std::any_of(doc.ports.begin(), doc.ports.end(), [&](const PortDecl& p) { return p.name == n; });
  };
  switch (e.kind) {
    case ExprKind::ref: {
      if (is_port(e.name)) {
        out.insert(e.name);
        return;
      }
      for (const auto& p : doc.predicates)
        if (p.name == e.name && visited_predicates.insert(p.name).second)
          collect_ports(doc, *p.body, out, visited_predicates, depth + 1);
      return;
    }
    case ExprKind::prev_ref:
      out.insert(e.lhs.text);
      return;
    case ExprKind::equals:
    case ExprKind::not_equals:
      for (const Operand* o : {&e.lhs, &e.rhs})
        if (o->kind == Operand::Kind::prev || (o->kind == Operand::Kind::name && is_port(o->text)))
          out.insert(o->text);
      return;
    case ExprKind::runs:
      for (const auto& r : e.runs)
        for (const auto& h : r.histories) out.insert(h.first);
      return;
    default:
      if (e.left) collect_ports(doc, *e.left, out, visited_predicates, depth + 1);
      if (e.right) collect_ports(doc, *e.right, out, visited_predicates, depth + 1);
      return;
  }
}

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<std::string> referenced_ports(const Document& doc, const Expr& expr) {
  std::set<std::string> out;
  std::set<std::string> visited;
  collect_ports(doc, expr, out, visited, 0);
  return {out.begin(), out.end()};
}

void check(const Document& doc) { Checker(doc).run(); }

Document parse(std::string_view text) {
  Document doc = Parser(tokenize(text)).document();
  check(doc);
  return doc;
}

}  // namespace pct::speclang
