#pragma once

// Assume/guarantee contracts over finite traces: canonical form,
// satisfaction, parallel composition and refinement.

#include <string>
#include <string_view>

#include "pct/traces.hpp"

namespace pct {

/// Implementations are plain assertions.
using Implementation = Assertion;

class Contract {
 public:
  /// Lifts both assertions onto `sig` (which must cover their ports); shared
  /// ports take their role from `sig`.
  static Contract make(Signature sig, const Assertion& assumption, const Assertion& guarantee);

  /// (universe, universe) over `sig`.
  static Contract trivial(Signature sig, Horizon horizon, std::uint64_t cap = kDefaultRunCap);

  const Signature& signature() const { return sig_; }
  Horizon horizon() const { return assumption_.horizon(); }
  const Assertion& assumption() const { return assumption_; }
  const Assertion& guarantee() const { return guarantee_; }

  /// Set when the contract came out of canonicalize() or compose().
  bool canonical() const { return canonical_; }

  /// not(A) is a subset of G, checked on the run sets.
  bool in_canonical_form() const;

  friend bool operator==(const Contract& a, const Contract& b) {
    return a.sig_ == b.sig_ && a.assumption_ == b.assumption_ && a.guarantee_ == b.guarantee_;
  }

 private:
  Contract(Signature sig, Assertion a, Assertion g, bool canonical)
      : sig_(std::move(sig)), assumption_(std::move(a)), guarantee_(std::move(g)),
        canonical_(canonical) {}

  friend Contract canonicalize(const Contract& c);
  friend Contract compose(const Contract& c1, const Contract& c2);

  Signature sig_;
  Assertion assumption_;
  Assertion guarantee_;
  bool canonical_ = false;
};

/// (A, G | not A). Idempotent; preserves the satisfaction set.
Contract canonicalize(const Contract& c);

/// The unique maximal implementation G | not A.
Assertion maximal_implementation(const Contract& c);

/// The three equivalent readings of M |= C, each evaluated on its own.
struct SatisfactionFormulas {
  bool guarded_inclusion;   // M & A included in G
  bool maximal_inclusion;   // M included in G | not A
  bool empty_violation;     // M & (A & not G) is empty

  bool agree() const {
    return guarded_inclusion == maximal_inclusion && maximal_inclusion == empty_violation;
  }
};

/// Evaluated at the union of the implementation's and the contract's
/// signatures; contract roles win on shared ports.
SatisfactionFormulas satisfaction_formulas(const Implementation& m, const Contract& c);

bool satisfies(const Implementation& m, const Contract& c);

/// Parallel composition. Inputs are canonicalized first; the result is
/// canonical. Throws controlled_overlap when both control a port and
/// domain_conflict on incompatible shared ports.
Contract compose(const Contract& c1, const Contract& c2);

/// C1 refines C2: sigma1 within sigma2, A1 includes A2 and G1 is included in
/// G2, all at sigma2 on the canonical forms. Roles do not take part in the
/// signature comparison.
bool refines(const Contract& c1, const Contract& c2);

/// Product of two implementations with controlled = c1 | c2. Throws
/// controlled_overlap if they control a common port.
Implementation compose_implementations(const Implementation& m1, const Implementation& m2);

/// Signature of a composition: port union, controlled = c1 | c2.
Signature composition_signature(const Signature& s1, const Signature& s2);

Contract rename_port(const Contract& c, std::string_view from, const std::string& to);

}  // namespace pct
