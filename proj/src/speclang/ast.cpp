#include "pct/speclang/ast.hpp"

#include <algorithm>

namespace pct::speclang {

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return same(*a, *b);
}

bool same(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::truth:
    case ExprKind::falsity:
      return true;
    case ExprKind::ref:
      return a.name == b.name;
    case ExprKind::prev_ref:
      return a.lhs == b.lhs;
    case ExprKind::equals:
    case ExprKind::not_equals:
      return a.lhs == b.lhs && a.rhs == b.rhs;
    case ExprKind::at:
      return a.step == b.step && same(a.left, b.left);
    case ExprKind::runs:
      return a.runs == b.runs;
    default:
      return same(a.left, b.left) && same(a.right, b.right);
  }
}

ExprPtr make_truth(bool value) {
  auto e = std::make_shared<Expr>();
  e->kind = value ? ExprKind::truth : ExprKind::falsity;
  return e;
}

ExprPtr make_ref(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::ref;
  e->name = std::move(name);
  return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->left = std::move(operand);
  return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr left, ExprPtr right) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->left = std::move(left);
  e->right = std::move(right);
  return e;
}

namespace {

template <typename T>
std::vector<const T*> by_name(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& item : items) out.push_back(&item);
  std::stable_sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->name < b->name; });
  return out;
}

template <typename T, typename Eq>
bool same_items(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  auto sa = by_name(a);
  auto sb = by_name(b);
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (sa[i]->name != sb[i]->name || !eq(*sa[i], *sb[i])) return false;
  return true;
}

}  // namespace

bool same(const Document& a, const Document& b) {
  if (a.horizon != b.horizon) return false;
  const bool ports = same_items(a.ports, b.ports, [](const PortDecl& x, const PortDecl& y) {
    return x.boolean == y.boolean && x.values == y.values && x.role == y.role &&
           x.bernoulli == y.bernoulli;
  });
  const bool preds = same_items(a.predicates, b.predicates, [](const PredicateDecl& x, const PredicateDecl& y) {
    return same(x.body, y.body);
  });
  const bool dists = same_items(a.dists, b.dists, [](const DistDecl& x, const DistDecl& y) {
    if (x.ports != y.ports || x.bernoulli != y.bernoulli || x.table.size() != y.table.size())
      return false;
    for (std::size_t i = 0; i < x.table.size(); ++i)
      if (!(x.table[i].history == y.table[i].history) || x.table[i].weight != y.table[i].weight)
        return false;
    return true;
  });
  const bool contracts = same_items(a.contracts, b.contracts, [](const ContractDecl& x, const ContractDecl& y) {
    return x.ports == y.ports && x.controls == y.controls && same(x.assume, y.assume) &&
           same(x.guarantee, y.guarantee);
  });
  const bool impls = same_items(a.impls, b.impls, [](const ImplDecl& x, const ImplDecl& y) {
    return x.ports == y.ports && x.controls == y.controls && same(x.behavior, y.behavior);
  });
  const bool pcs = same_items(a.prob_contracts, b.prob_contracts,
                              [](const ProbContractDecl& x, const ProbContractDecl& y) {
                                return x.contract == y.contract && x.prob == y.prob && x.dist == y.dist;
                              });
  return ports && preds && dists && contracts && impls && pcs;
}

}  // namespace pct::speclang
