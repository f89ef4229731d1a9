#include "tisim/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>

namespace tisim {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(n);
}

std::optional<Int> perfect_sqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = isqrt_floor(n);
  if (r * r == n) return r;
  return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  auto num = perfect_sqrt(numerator(q));
  if (!num) return std::nullopt;
  auto den = perfect_sqrt(denominator(q));
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

Int floor_quadratic(const Int& a, const Int& b, const Int& q) {
  if (q <= 0) throw std::domain_error("floor_quadratic: q must be positive");
  if (b == 0) return floor_div(a, q);
  // b*sqrt(2) is irrational, so its floor is strict on both sides:
  // a + b*sqrt(2) lies in the open interval (a+f, a+f+1), which contains no
  // integer, hence floor((a + b*sqrt2)/q) = floor((a+f)/q).
  Int f = b > 0 ? isqrt_floor(2 * b * b) : -isqrt_floor(2 * b * b) - 1;
  return floor_div(a + f, q);
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + text + "'"); };
  std::size_t pos = 0;
  auto read_int = [&]() -> Int {
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      neg = text[pos] == '-';
      ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) bad();
    Int v(text.substr(start, pos - start));
    return neg ? Int(-v) : v;
  };
  Int num = read_int();
  Int den = 1;
  if (pos < text.size()) {
    if (text[pos] != '/') bad();
    ++pos;
    den = read_int();
    if (pos != text.size()) bad();
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  return Rational(num, den);
}

std::string rational_str(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

double rational_to_double(const Rational& q) {
  double d = BigFloat(q).convert_to<double>();
  if (!std::isfinite(d)) throw std::range_error("rational out of double range");
  return d;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
  // Every finite double is m * 2^e exactly.
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  Int mant(static_cast<long long>(std::ldexp(m, 53)));
  exp -= 53;
  Rational r(mant);
  if (exp > 0) {
    r *= Rational(Int(1) << exp);
  } else if (exp < 0) {
    r /= Rational(Int(1) << -exp);
  }
  return r;
}

}  // namespace tisim
