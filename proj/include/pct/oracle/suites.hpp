#pragma once

// Property suites over generated instances. Each property is evaluated with
// the engine and with the oracle; the property must hold for both, and any
// disagreement between the two is counted separately.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pct/oracle/generator.hpp"

namespace pct::oracle {

/// One evaluated instance, for line-delimited output.
struct Record {
  std::string suite;
  std::uint64_t seed = 0;
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> fields;  // exact values
};

using Sink = std::function<void(const Record&)>;

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::size_t skipped = 0;  // instances outside the property's hypotheses
  std::optional<std::uint64_t> first_failure;
  std::string first_failure_detail;
  std::size_t oracle_checks = 0;
  std::size_t oracle_mismatches = 0;
  std::optional<std::uint64_t> first_mismatch;

  bool holds() const { return passed == total; }
  bool ok() const { return holds() && oracle_mismatches == 0; }
};

struct SuiteOptions {
  std::uint64_t first_seed = 0;
  std::size_t seeds = 500;
  Budget budget;
  Sink sink;
};

/// sat(M1 x M2, C1 || C2) >= sat(M1, C1) * sat(M2, C2).
SuiteResult theorem1(const SuiteOptions& opt);
/// Equality of the above on instances with disjoint signatures.
SuiteResult theorem1_tightness(const SuiteOptions& opt);
/// sat(M, C2) >= sat(M, C1) * gamma on non-degenerate refinement instances.
SuiteResult theorem2(const SuiteOptions& opt);
/// With G2 within G1: counts instances where sat(M, C2) = sat(M, C1) * gamma.
/// `total` is 1 and `passed` is 1 when at least one such instance exists.
SuiteResult theorem2_tightness(const SuiteOptions& opt);
/// Composition preserves satisfaction.
SuiteResult lemma1(const SuiteOptions& opt);
/// Refinement preserves satisfaction, and refinement is compositional.
SuiteResult lemma2(const SuiteOptions& opt);
/// The three readings of satisfaction agree.
SuiteResult formulas(const SuiteOptions& opt);
/// canonicalize is idempotent, keeps the satisfaction set, matches the
/// maximal implementation, and compose yields canonical contracts.
SuiteResult canonical_form(const SuiteOptions& opt);
/// Engine and oracle agree on sat_level, refine_level, satisfies, refines,
/// compose and implementation products.
SuiteResult oracle_agreement(const SuiteOptions& opt);

struct VerifyReport {
  std::vector<SuiteResult> suites;

  const SuiteResult& suite(const std::string& name) const;
  std::size_t oracle_checks() const;
  std::size_t oracle_mismatches() const;
  bool ok() const;
};

/// The suites reported by `pct verify`.
VerifyReport verify(const SuiteOptions& opt);

}  // namespace pct::oracle
