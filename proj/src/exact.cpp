#include "tisim/exact.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tisim {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

int ExactReal::sign() const {
  int sr = r.sign();
  int ss = s.sign();
  if (ss == 0) return sr;
  if (sr == 0) return ss;
  if (sr == ss) return sr;
  // Opposite signs: compare |r| against |s|*sqrt2 by squaring.
  // r + s*sqrt2 > 0  <=>  r^2 > 2 s^2 when r > 0, and  <  when r < 0.
  Rational d = r * r - 2 * (s * s);
  return sr > 0 ? d.sign() : -d.sign();
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
  if (b.is_zero()) throw std::domain_error("ExactReal division by zero");
  // 1/(r + s*sqrt2) = (r - s*sqrt2) / (r^2 - 2 s^2)
  Rational d = b.r * b.r - 2 * (b.s * b.s);
  ExactReal num = a * ExactReal(b.r, -b.s);
  return ExactReal(num.r / d, num.s / d);
}

double ExactReal::to_double() const {
  static const BigFloat kSqrt2 = sqrt(BigFloat(2));
  BigFloat v = BigFloat(r) + BigFloat(s) * kSqrt2;
  double d = v.convert_to<double>();
  if (!std::isfinite(d)) throw std::range_error("exact value out of double range");
  return d;
}

Int ExactReal::floor_scaled_pow2(unsigned k) const {
  // value * 2^k = (a*d*2^k + (c*b*2^k)*sqrt2) / (b*d)  with r=a/b, s=c/d.
  const Int &a = numerator(r), &b = denominator(r);
  const Int &c = numerator(s), &d = denominator(s);
  Int scale = Int(1) << k;
  return floor_quadratic(a * d * scale, c * b * scale, b * d);
}

Int ExactReal::ceil_scaled_pow2(unsigned k) const {
  if (s != 0) return floor_scaled_pow2(k) + 1;  // irrational: ceil = floor + 1
  const Int &a = numerator(r), &b = denominator(r);
  return -floor_div(-(a << k), b);
}

std::optional<ExactReal> ring_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (auto root = rational_sqrt(q)) return ExactReal(*root);
  if (auto root = rational_sqrt(q / 2)) return ExactReal(Rational(0), *root);
  return std::nullopt;
}

namespace {

// Renders |s|*sqrt2 (s must be nonzero; sign handled by the caller).
std::string sqrt2_term(const Rational& s) {
  Rational a = abs(s);
  const Int& num = numerator(a);
  const Int& den = denominator(a);
  if (den == 1) return num == 1 ? "sqrt2" : num.str() + "*sqrt2";
  if (den == 2) return num.str() + "/sqrt2";  // p/2 * sqrt2 = p/sqrt2
  return "(" + rational_str(a) + ")*sqrt2";
}

}  // namespace

std::string ExactReal::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (r != 0) {
    out = rational_str(r);
    if (s != 0) out += (s > 0 ? "+" : "-") + sqrt2_term(s);
  } else {
    out = (s < 0 ? "-" : "") + sqrt2_term(s);
  }
  return out;
}

std::string ExactAmp::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (!re.is_zero()) out = re.str();
  if (!im.is_zero()) {
    ExactReal mag = im.sign() < 0 ? -im : im;
    std::string body;
    if (mag == ExactReal(1)) {
      body = "i";
    } else {
      body = "(" + mag.str() + ")i";
    }
    if (out.empty()) {
      out = (im.sign() < 0 ? "-" : "") + body;
    } else {
      out += (im.sign() < 0 ? "-" : "+") + body;
    }
  }
  return out;
}

std::string amp_decimal_str(const std::complex<double>& a, int places) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(places);
  if (a.imag() == 0.0) {
    os << a.real();
  } else if (a.real() == 0.0) {
    os << a.imag() << "i";
  } else {
    os << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
  }
  return os.str();
}

}  // namespace tisim
