#pragma once

// Bridge from checked documents to engine values.
//
// Signature rules: a declaration's ports are its `ports` list, or else the
// ports its expressions mention; its controlled ports are its `controls`
// list, or else those of its ports declared `controlled`. A probabilistic
// contract takes its distribution from `dist`, or else from the product of
// the `prob bernoulli(p)` tags of its ports.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pct/contracts.hpp"
#include "pct/probabilistic.hpp"
#include "pct/speclang/ast.hpp"

namespace pct::speclang {

class Model {
 public:
  /// Runs check() on the document.
  explicit Model(Document doc, std::uint64_t cap = kDefaultRunCap);
  static Model from_text(std::string_view text, std::uint64_t cap = kDefaultRunCap);

  const Document& document() const { return doc_; }
  std::uint64_t cap() const { return cap_; }
  /// Throws invalid_argument when the document declares no horizon.
  Horizon horizon() const;

  Port port(std::string_view name) const;

  bool has_contract(std::string_view name) const;
  bool has_impl(std::string_view name) const;
  bool has_prob_contract(std::string_view name) const;

  const ContractDecl& contract_decl(std::string_view name) const;
  const ImplDecl& impl_decl(std::string_view name) const;
  const ProbContractDecl& prob_contract_decl(std::string_view name) const;

  Signature contract_signature(std::string_view name) const;
  Signature impl_signature(std::string_view name) const;

  /// The contract as written (not canonicalized).
  Contract contract(std::string_view name) const;
  Implementation implementation(std::string_view name) const;
  Distribution distribution(std::string_view name) const;
  /// Accepts a probcontract name, or a plain contract name, which yields a
  /// contract without probabilistic ports.
  ProbContract prob_contract(std::string_view name) const;

  Assertion denote(const Expr& expr, const Signature& sig) const;

 private:
  Signature signature_of(const std::optional<std::vector<std::string>>& ports,
                         const std::optional<std::vector<std::string>>& controls,
                         std::initializer_list<const Expr*> exprs) const;

  Document doc_;
  std::uint64_t cap_;
};

/// A copy of the model's document extended with the composition of `left`
/// and `right` (contract or probcontract names), declared under `name`. For
/// probabilistic operands the contract is `<name>_base`, the probcontract is
/// `<name>`, and a `<name>_dist` table is added unless the port tags already
/// describe the product distribution.
Document with_composition(const Model& model, std::string_view left, std::string_view right,
                          const std::string& name);

/// Explicit table declaration for a distribution.
DistDecl dist_decl(const std::string& name, const Distribution& dist);

}  // namespace pct::speclang
