#pragma once

// Seeded random instances for the property suites. Everything is derived
// from the seed alone, so a failing seed reproduces the same instance.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "pct/contracts.hpp"
#include "pct/probabilistic.hpp"

namespace pct::oracle {

struct Budget {
  int ports = 3;        // non-probabilistic ports per side, own and read
  int prob_ports = 2;   // probabilistic boolean ports per side
  int max_horizon = 3;
  int max_domain = 3;
  /// Bound on the composed run universe; the horizon, then domain sizes, are
  /// lowered until it fits.
  std::uint64_t universe_cap = 4096;

  /// `ports=3,prob=2,h=3,domain=3,cap=4096`, any subset, any order.
  static Budget parse(std::string_view spec);
  std::string describe() const;
};

/// Deterministic generator with its own bounded draws, so instances do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

/// Two components ready for composition: controlled ports are disjoint,
/// probabilistic ports are private to their side and never controlled by
/// the peer. Implementations are receptive (every input history has at
/// least one run) and control exactly their contract's controlled ports.
struct Instance {
  std::uint64_t seed = 0;
  Implementation m1, m2;
  ProbContract pc1, pc2;
};

/// `disjoint` makes the two signatures share no port.
Instance gen_instance(std::uint64_t seed, const Budget& budget, bool disjoint = false);

/// pc1 and pc2 meet the refinement preconditions (ports, probabilistic
/// ports, marginal), share their controlled ports, and the conditioning
/// event has positive probability. With `tight`, G2 is within G1.
struct RefinementInstance {
  std::uint64_t seed = 0;
  Implementation m;
  ProbContract pc1, pc2;
};

RefinementInstance gen_refinement(std::uint64_t seed, const Budget& budget, bool tight = false);

/// Random rational table over `ports`, some weights zero, summing to one.
Distribution random_distribution(Rng& rng, const std::vector<Port>& ports, Horizon horizon);

/// Counts generated instances whose composition preconditions fail.
struct Audit {
  std::size_t generated = 0;
  std::size_t rejected = 0;
};
Audit audit_generator(std::uint64_t first_seed, std::size_t count, const Budget& budget);

}  // namespace pct::oracle
