#pragma once

// Finite-trace universe: ports, histories, runs and the assertion algebra.
//
// Every run over a signature at horizon T has a canonical index: a
// little-endian mixed-radix number whose digits are the value indices of the
// (port, step) pairs, ports in lexicographic name order and steps ascending.
// Digit k = port_position * T + step, radix = |domain(port)|. Assertions
// store their run set as a bitset over that index space.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace pct {

inline constexpr std::uint64_t kDefaultRunCap = std::uint64_t{1} << 24;

class Port {
 public:
  /// Values must be distinct and non-empty; their order is the index order.
  Port(std::string name, std::vector<std::string> domain);

  /// Domain {false, true}.
  static Port boolean(std::string name);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(domain_.size()); }
  bool is_boolean() const;
  std::optional<std::uint32_t> index_of(std::string_view value) const;

  friend bool operator==(const Port&, const Port&) = default;

 private:
  std::string name_;
  std::vector<std::string> domain_;
};

enum class Role : std::uint8_t { uncontrolled, controlled };

/// A set of ports partitioned into controlled and uncontrolled ones. Ports
/// are kept sorted by name, which fixes the canonical run index.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<Port> ports, const std::vector<std::string>& controlled = {});

  const std::vector<Port>& ports() const { return ports_; }
  std::size_t size() const { return ports_.size(); }
  bool empty() const { return ports_.empty(); }

  bool contains(std::string_view name) const { return position(name).has_value(); }
  std::optional<std::size_t> position(std::string_view name) const;
  const Port& port(std::string_view name) const;
  Role role(std::string_view name) const;
  bool is_controlled(std::string_view name) const { return role(name) == Role::controlled; }

  std::vector<std::string> names() const;
  std::vector<std::string> controlled_names() const;
  std::vector<std::string> uncontrolled_names() const;

  /// Same ports, roles replaced.
  Signature with_controlled(const std::vector<std::string>& controlled) const;
  /// Sub-signature over `names`, keeping roles.
  Signature restricted_to(const std::vector<std::string>& names) const;
  /// True when every port of `other` is here with the same domain (roles ignored).
  bool covers(const Signature& other) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Port> ports_;
  std::vector<Role> roles_;
};

/// Port-set union. Throws domain_conflict on a shared port with different
/// domains and role_conflict if the two sides disagree on its role.
Signature unite(const Signature& a, const Signature& b);

/// Port-set union where shared ports take their role from `primary`.
Signature overlay(const Signature& primary, const Signature& other);

std::string describe(const Signature& sig);

class Horizon {
 public:
  explicit Horizon(int steps);
  int steps() const { return steps_; }
  friend bool operator==(const Horizon&, const Horizon&) = default;

 private:
  int steps_;
};

/// Value indices into the port's domain, one per step.
using History = std::vector<std::uint32_t>;

struct Run {
  std::map<std::string, History> histories;

  friend bool operator==(const Run&, const Run&) = default;
  friend auto operator<=>(const Run&, const Run&) = default;
};

std::string describe(const Run& run, const Signature& sig);

/// Index arithmetic for the runs of one signature at one horizon.
class RunSpace {
 public:
  RunSpace(const Signature& sig, Horizon horizon, std::uint64_t cap = kDefaultRunCap);

  std::uint64_t size() const { return size_; }
  int steps() const { return steps_; }
  std::size_t digits() const { return radix_.size(); }
  std::uint32_t radix(std::size_t digit) const { return radix_[digit]; }
  std::uint64_t stride(std::size_t digit) const { return stride_[digit]; }

  std::uint32_t value(std::uint64_t index, std::size_t port_pos, int step) const {
    const std::size_t d = port_pos * static_cast<std::size_t>(steps_) + static_cast<std::size_t>(step);
    return static_cast<std::uint32_t>((index / stride_[d]) % radix_[d]);
  }

  std::uint64_t encode(const Run& run) const;
  Run decode(std::uint64_t index) const;

 private:
  std::vector<std::string> names_;
  int steps_;
  std::vector<std::uint32_t> radix_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t size_ = 1;
};

using RunSet = boost::dynamic_bitset<std::uint64_t>;

/// A signature plus a set of runs over it (an implementation is one too).
class Assertion {
 public:
  Assertion(Signature sig, Horizon horizon, RunSet runs, std::uint64_t cap = kDefaultRunCap);

  static Assertion empty(Signature sig, Horizon horizon, std::uint64_t cap = kDefaultRunCap);
  static Assertion from_runs(Signature sig, Horizon horizon, const std::vector<Run>& runs,
                             std::uint64_t cap = kDefaultRunCap);
  static Assertion from_indices(Signature sig, Horizon horizon,
                                const std::vector<std::uint64_t>& indices,
                                std::uint64_t cap = kDefaultRunCap);

  const Signature& signature() const { return sig_; }
  Horizon horizon() const { return horizon_; }
  const RunSet& runs() const { return runs_; }
  std::uint64_t cap() const { return cap_; }
  RunSpace space() const { return RunSpace(sig_, horizon_, cap_); }

  std::uint64_t count() const { return runs_.count(); }
  bool is_empty() const { return runs_.none(); }
  bool is_universe() const { return runs_.all(); }
  bool contains(const Run& run) const;

  std::vector<std::uint64_t> indices() const;
  std::vector<Run> decoded_runs() const;

  friend bool operator==(const Assertion& a, const Assertion& b) {
    return a.horizon_ == b.horizon_ && a.sig_ == b.sig_ && a.runs_ == b.runs_;
  }

 private:
  Signature sig_;
  Horizon horizon_;
  RunSet runs_;
  std::uint64_t cap_;
};

/// Set operations on assertions over the same signature and horizon.
Assertion operator&(const Assertion& a, const Assertion& b);
Assertion operator|(const Assertion& a, const Assertion& b);
Assertion operator-(const Assertion& a, const Assertion& b);
bool is_subset(const Assertion& a, const Assertion& b);

Assertion universe(const Signature& sig, Horizon horizon, std::uint64_t cap = kDefaultRunCap);

/// Inverse projection onto a superset signature.
Assertion lift(const Assertion& e, const Signature& target);

/// Image of the runs under restriction to a subset signature.
Assertion project(const Assertion& e, const Signature& target);

Assertion complement(const Assertion& e);

/// Intersection after lifting both sides to the union signature.
Assertion product(const Assertion& a, const Assertion& b);

/// lift(a, sig) is a subset of lift(b, sig).
bool included_in(const Assertion& a, const Assertion& b, const Signature& sig);

/// Same ports and runs, roles taken from `sig`.
Assertion relabel(const Assertion& e, const Signature& sig);

/// Relabels to `sig`'s roles on e's ports, then lifts. Contract-level helper
/// for the places where role disagreements are resolved by the caller.
Assertion align(const Assertion& e, const Signature& sig);

/// Renames one port, re-indexing the runs.
Assertion rename_port(const Assertion& e, std::string_view from, const std::string& to);

/// Adjusts the enumeration cap carried by an assertion.
Assertion with_cap(const Assertion& e, std::uint64_t cap);

}  // namespace pct
