#include "pct/rational.hpp"

#include <cctype>

#include "pct/errors.hpp"

namespace pct {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::capacity: return "capacity";
    case Errc::signature_mismatch: return "signature-mismatch";
    case Errc::domain_conflict: return "domain-conflict";
    case Errc::role_conflict: return "role-conflict";
    case Errc::controlled_overlap: return "controlled-overlap";
    case Errc::prob_port_overlap: return "prob-port-overlap";
    case Errc::prob_port_controlled: return "prob-port-controlled-by-peer";
    case Errc::port_role_mismatch: return "port-role-mismatch";
    case Errc::horizon_mismatch: return "horizon-mismatch";
    case Errc::probability_range: return "probability-range";
    case Errc::not_normalized: return "not-normalized";
    case Errc::marginal_mismatch: return "marginal-mismatch";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::parse: return "parse";
  }
  return "unknown";
}

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

cpp_int pow10(std::size_t n) {
  cpp_int r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(Errc::invalid_argument,
                 "not a rational number: '" + std::string(text) + "'");
  };
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    cpp_int d(std::string{den});
    if (d == 0) throw Error(Errc::invalid_argument, "zero denominator in '" + std::string(text) + "'");
    value = Rational(cpp_int(std::string{num}), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) throw fail();
    cpp_int scale = pow10(frac.size());
    value = Rational(cpp_int(std::string{whole}) * scale + cpp_int(std::string{frac}), scale);
  } else {
    if (!all_digits(body)) throw fail();
    value = Rational(cpp_int(std::string{body}));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_decimal(const Rational& value, int max_digits) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  cpp_int num = numerator(value);
  const cpp_int den = denominator(value);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  // Scale by 10^max_digits, round half up, then trim trailing zeros.
  const cpp_int scale = pow10(static_cast<std::size_t>(max_digits));
  cpp_int scaled = (num * scale * 2 + den) / (den * 2);
  cpp_int whole = scaled / scale;
  std::string frac = cpp_int(scaled % scale).str();
  frac.insert(0, static_cast<std::size_t>(max_digits) - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  return sign + whole.str() + "." + frac;
}

std::string format_level(const Rational& value) {
  return to_string(value) + " (" + to_decimal(value) + ")";
}

}  // namespace pct
