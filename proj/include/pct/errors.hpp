#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pct {

enum class Errc {
  capacity,                 // run universe larger than the enumeration cap
  signature_mismatch,       // lift/project/include outside the subset order
  domain_conflict,          // same port name, different value domains
  role_conflict,            // controlled in one signature, uncontrolled in the other
  controlled_overlap,       // composing contracts that control a common port
  prob_port_overlap,        // composing probabilistic contracts with shared p
  prob_port_controlled,     // a probabilistic port is controlled by the peer
  port_role_mismatch,       // implementation/contract port roles (satisfaction)
  horizon_mismatch,
  probability_range,
  not_normalized,
  marginal_mismatch,
  invalid_argument,
  parse,                    // speclang diagnostics
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pct
