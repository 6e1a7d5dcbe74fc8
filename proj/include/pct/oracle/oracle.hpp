#pragma once

// Brute-force reference semantics. Works on explicit sets of runs obtained
// by decoding the engine's bitsets with its own index arithmetic, and checks
// every definition by enumerating runs one at a time. Nothing here calls the
// engine's lift/project/inclusion code.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pct/contracts.hpp"
#include "pct/probabilistic.hpp"
#include "pct/rational.hpp"

namespace pct::oracle {

/// Ports sorted by name plus a horizon. A flat run lists the value indices
/// port after port, steps ascending within a port.
struct Space {
  std::vector<Port> ports;
  int steps = 1;
};

using Flat = std::vector<std::uint32_t>;

struct RunTable {
  Space space;
  std::set<std::string> controlled;
  std::set<Flat> runs;
};

RunTable from_assertion(const Assertion& e);

/// Every run of a space, in canonical index order.
std::vector<Flat> all_runs(const Space& space);

/// Runs of `a` over the union space whose restrictions lie in both.
RunTable oracle_product(const RunTable& a, const RunTable& b);

/// M & A included in G, evaluated run by run over the union of ports.
bool oracle_satisfies(const RunTable& m, const Contract& c);

struct ContractTable {
  Space space;
  std::set<std::string> controlled;
  std::set<Flat> assumption;
  std::set<Flat> guarantee;
};

/// Definition of parallel composition, run by run.
ContractTable oracle_compose(const Contract& c1, const Contract& c2);

/// Refinement on the canonical forms, run by run over c2's ports.
bool oracle_refines(const Contract& c1, const Contract& c2);

/// Sum of P(w) over joint histories w of p such that every run over the
/// union of ports that agrees with w and whose restriction is in M has its
/// restriction in G | not A.
Rational oracle_sat_level(const RunTable& m, const ProbContract& pc);

struct RefineLevel {
  std::optional<Rational> level;
  Rational p_good1;
  Rational p_good_both;
};

RefineLevel oracle_refine_level(const ProbContract& pc1, const ProbContract& pc2);

/// Same ports (by name and domain) and the same runs.
bool same_runs(const RunTable& a, const RunTable& b);
bool same_runs(const Assertion& engine, const std::set<Flat>& runs, const Space& space);

}  // namespace pct::oracle
