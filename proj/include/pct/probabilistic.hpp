#pragma once

// Probabilistic contracts: a canonical contract, a set p of uncontrolled
// ports and an exact distribution over the joint histories of p.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pct/contracts.hpp"
#include "pct/rational.hpp"
#include "pct/traces.hpp"

namespace pct {

/// Exact probability table over the joint histories of a port set. Joint
/// histories are indexed with the canonical run index of `space()`.
class Distribution {
 public:
  /// `weights[i]` is the probability of joint history i. Weights must be
  /// non-negative and sum to exactly one.
  Distribution(std::vector<Port> ports, Horizon horizon, std::vector<Rational> weights);

  /// All mass on the single empty history of the empty port set.
  static Distribution point_mass(Horizon horizon);

  /// Roles in the returned signature are all uncontrolled.
  const Signature& space() const { return space_; }
  std::vector<std::string> port_names() const { return space_.names(); }
  Horizon horizon() const { return horizon_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t outcomes() const { return weights_.size(); }
  const Rational& weight(const Run& omega) const;

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.space_ == b.space_ && a.horizon_ == b.horizon_ && a.weights_ == b.weights_;
  }

 private:
  Signature space_;
  Horizon horizon_;
  std::vector<Rational> weights_;
};

/// Step-independent product distribution of one boolean port.
Distribution bernoulli_iid(const Port& port, const Rational& p_true, Horizon horizon);

/// Independent product; port sets must be disjoint.
Distribution product_dist(const Distribution& d1, const Distribution& d2);

/// Sums out every port not in `ports`.
Distribution marginal(const Distribution& d, const std::vector<std::string>& ports);

Distribution rename_port(const Distribution& d, std::string_view from, const std::string& to);

class ProbContract {
 public:
  /// Canonicalizes `base`. Throws unless every probabilistic port is an
  /// uncontrolled port of the base signature and `dist` ranges exactly over
  /// them at the contract's horizon.
  ProbContract(Contract base, std::vector<std::string> pports, Distribution dist);

  /// (C, {}, point mass): a contract without randomness.
  static ProbContract deterministic(const Contract& base);

  const Contract& base() const { return base_; }
  const Signature& signature() const { return base_.signature(); }
  const std::vector<std::string>& pports() const { return pports_; }
  const Distribution& dist() const { return dist_; }

 private:
  Contract base_;
  std::vector<std::string> pports_;
  Distribution dist_;
};

struct SatReport {
  Rational level;
  /// A most likely joint history for which some run of M leaves G.
  std::optional<Run> witness_bad;
};

struct RefineReport {
  /// Empty when the conditioning event has probability zero.
  std::optional<Rational> level;
  Rational p_good1;
  Rational p_good_both;
  bool degenerate() const { return !level.has_value(); }
};

/// Probability of the joint histories w such that every run of M compatible
/// with w lies in the canonical guarantee. Requires M's controlled ports to
/// equal the contract's and M's uncontrolled ports to be among the
/// contract's uncontrolled ports.
SatReport sat_level(const Implementation& m, const ProbContract& pc);

/// (C1 || C2, p1 + p2, P1 x P2).
ProbContract compose_prob(const ProbContract& pc1, const ProbContract& pc2);

/// Conditional probability, under P2, that all runs extending a history lie
/// in G2 given that they all lie in G1.
RefineReport refine_level(const ProbContract& pc1, const ProbContract& pc2);

struct Wrapped {
  /// The original contract with `x` turned into an ordinary input and the
  /// randomness moved to the fresh port `<x>_p`.
  ProbContract contract;
  /// Wrapper: uncontrolled `<x>_p`, `<x>_c`, selector `<x>_s` in {p, c};
  /// controlled `x`; at each step x copies the selected source.
  Contract wrapper;
};

Wrapped wrap(std::string_view x, const ProbContract& pc);

/// Name of the wrapper ports derived from `x`.
struct WrapperPorts {
  std::string probabilistic;
  std::string controlled;
  std::string selector;
};
WrapperPorts wrapper_ports(std::string_view x);

ProbContract rename_port(const ProbContract& pc, std::string_view from, const std::string& to);

}  // namespace pct
