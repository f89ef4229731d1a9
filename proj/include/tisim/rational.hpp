#pragma once

// Arbitrary-precision rational plumbing. The heavy lifting is
// boost::multiprecision (cpp_int / cpp_rational keep gcd-reduced canonical
// form with a positive denominator); this header adds the handful of exact
// integer helpers the Q(sqrt2) layer needs.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace tisim {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// floor(a / b) for b != 0 (cpp_int division truncates toward zero).
Int floor_div(const Int& a, const Int& b);

/// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(const Int& n);

/// If n is a perfect square, returns its nonnegative root.
std::optional<Int> perfect_sqrt(const Int& n);

/// If q >= 0 is the square of a rational, returns that (nonnegative) root.
std::optional<Rational> rational_sqrt(const Rational& q);

/// floor((a + b*sqrt(2)) / q) computed exactly in integer arithmetic; q > 0.
Int floor_quadratic(const Int& a, const Int& b, const Int& q);

/// Parses "p/q" or "p" with optional leading sign. Throws std::invalid_argument
/// on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

/// "p/q", or just "p" when the denominator is 1.
std::string rational_str(const Rational& q);

/// Nearest double (via a guard-precision binary float). Throws
/// std::range_error if the value overflows the double range.
double rational_to_double(const Rational& q);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);

}  // namespace tisim
