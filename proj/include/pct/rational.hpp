#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pct {

/// Exact probability value. All levels, weights and bounds use it; decimals
/// only appear when formatting for humans.
using Rational = boost::multiprecision::cpp_rational;

/// Parses `n`, `n/d` or a plain decimal `i.f` exactly. Throws
/// Error(Errc::invalid_argument) on anything else.
Rational parse_rational(std::string_view text);

/// Canonical exact form: `n` when the denominator is 1, else `n/d`.
std::string to_string(const Rational& value);

/// Decimal rendering with at least one fractional digit, exact when the
/// expansion terminates within `max_digits`, otherwise rounded half-up.
std::string to_decimal(const Rational& value, int max_digits = 12);

/// `81/100 (0.81)`
std::string format_level(const Rational& value);

}  // namespace pct
