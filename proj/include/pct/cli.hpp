#pragma once

// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 a property or threshold failed, 2 usage or
// diagnostic error.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pct/rational.hpp"

namespace pct::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitError = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Text of the bundled two-component example.
std::string_view example_document();

/// Quantities of the worked example, all exact.
struct ExampleReport {
  Rational alpha;               // sat(M1, P1)
  Rational beta;                // sat(M2, P2)
  Rational composed;            // sat(M1 x M2, P1 || P2)
  std::vector<std::string> composed_pports;
  Rational composed_vs_stated;  // sat(M1 x M2, P)
  std::optional<Rational> gamma;               // refine(P, Pprime)
  Rational gamma_p_good1;
  std::optional<Rational> gamma_computed;      // refine(P1 || P2, Pprime)
  Rational gamma_computed_p_good1;
  Rational vs_prime;            // sat(M1 x M2, Pprime)
  Rational disjoint_composed;   // P1 with a renamed copy of P2
  Rational disjoint_product;

  Rational alpha_beta() const { return alpha * beta; }
  /// Undefined gamma counts as zero in the product bound.
  Rational alpha_beta_gamma() const { return alpha * beta * gamma.value_or(0); }
  bool composed_bound_holds() const { return composed >= alpha_beta(); }
  bool prime_bound_holds() const { return vs_prime >= alpha_beta_gamma(); }
  bool disjoint_equality_holds() const { return disjoint_composed == disjoint_product; }
};

/// Computes the example from `document` (the bundled text by default).
ExampleReport run_example(std::string_view document = example_document());

void print_example(std::ostream& out, const ExampleReport& report);

}  // namespace pct::cli
