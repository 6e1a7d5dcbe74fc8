#pragma once

#include "pct/speclang/ast.hpp"
#include "pct/traces.hpp"

namespace pct::speclang {

/// Run set of `expr` over `sig` at `horizon`: the runs on which the formula
/// holds at step 0. Temporal operators range from the current step to the
/// last one, `at(k, e)` looks at step k, and `prev(x init v)` reads x one
/// step back (v at step 0). Predicates and port domains come from `doc`.
/// Throws signature_mismatch for a port outside `sig` and invalid_argument
/// for a value outside a domain.
Assertion denote(const Document& doc, const Expr& expr, const Signature& sig, Horizon horizon,
                 std::uint64_t cap = kDefaultRunCap);

}  // namespace pct::speclang
