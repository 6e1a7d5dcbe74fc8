#pragma once

#include <string>
#include <vector>

#include "pct/contracts.hpp"
#include "pct/oracle/generator.hpp"
#include "pct/probabilistic.hpp"
#include "pct/rational.hpp"

namespace pct::test {

inline Rational R(const std::string& s) { return parse_rational(s); }

inline Signature bools(const std::vector<std::string>& names, const std::vector<std::string>& controlled = {}) {
  std::vector<Port> ports;
  for (const auto& n : names) ports.push_back(Port::boolean(n));
  return Signature(ports, controlled);
}

/// Run over boolean ports from strings like "TF" (one letter per step).
inline Run run_of(const std::vector<std::pair<std::string, std::string>>& hs) {
  Run r;
  for (const auto& [name, steps] : hs) {
    History h;
    for (char c : steps) h.push_back(c == 'T' ? 1u : 0u);
    r.histories[name] = h;
  }
  return r;
}

/// Runs of `sig` at `h` accepted by `keep`.
template <typename Pred>
Assertion where(const Signature& sig, Horizon h, Pred keep) {
  const RunSpace space(sig, h);
  RunSet bits(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i)
    if (keep(space.decode(i))) bits.set(i);
  return Assertion(sig, h, bits);
}

/// Each run kept with probability 1/2.
inline Assertion random_assertion(oracle::Rng& rng, const Signature& sig, Horizon h) {
  RunSet bits(RunSpace(sig, h).size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (rng.chance(1, 2)) bits.set(i);
  return Assertion(sig, h, bits);
}

/// Up to `max_ports` ports named p0, p1, ... with domains of size 1 to 3.
inline Signature random_signature(oracle::Rng& rng, int max_ports, const std::string& prefix = "p") {
  std::vector<Port> ports;
  const int n = rng.between(1, max_ports);
  for (int i = 0; i < n; ++i) {
    const int d = rng.between(1, 3);
    std::vector<std::string> values;
    for (int v = 0; v < d; ++v) values.push_back("v" + std::to_string(v));
    ports.emplace_back(prefix + std::to_string(i), values);
  }
  return Signature(ports);
}

}  // namespace pct::test
