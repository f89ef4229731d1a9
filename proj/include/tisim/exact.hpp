#pragma once

// Exact amplitude arithmetic in the ring Q(sqrt2) + Q(sqrt2)*i. This is the
// smallest ring closed under what a 50/50 splitter network generates: the
// transmit factor 1/sqrt2, the reflection factor i/sqrt2, and sums/products
// thereof. Every value is represented uniquely (sqrt2 is irrational), so
// equality is structural and all operations are exact.

#include "tisim/rational.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace tisim {

/// r + s*sqrt(2) with rational r, s.
struct ExactReal {
  Rational r;  // coefficient of 1
  Rational s;  // coefficient of sqrt(2)

  ExactReal() = default;
  ExactReal(const Rational& rational) : r(rational) {}  // NOLINT: implicit by design
  ExactReal(Rational rat, Rational srd) : r(std::move(rat)), s(std::move(srd)) {}
  ExactReal(long long rational) : r(rational) {}  // NOLINT

  static ExactReal sqrt2() { return ExactReal(Rational(0), Rational(1)); }

  bool is_zero() const { return r == 0 && s == 0; }
  bool is_rational() const { return s == 0; }

  /// -1, 0 or +1. Exact: resolves r against s*sqrt2 by comparing squares.
  int sign() const;

  bool operator==(const ExactReal&) const = default;

  ExactReal operator-() const { return ExactReal(-r, -s); }
  friend ExactReal operator+(const ExactReal& a, const ExactReal& b) {
    return ExactReal(a.r + b.r, a.s + b.s);
  }
  friend ExactReal operator-(const ExactReal& a, const ExactReal& b) {
    return ExactReal(a.r - b.r, a.s - b.s);
  }
  friend ExactReal operator*(const ExactReal& a, const ExactReal& b) {
    return ExactReal(a.r * b.r + 2 * (a.s * b.s), a.r * b.s + a.s * b.r);
  }
  /// Exact division; throws std::domain_error when b == 0.
  friend ExactReal operator/(const ExactReal& a, const ExactReal& b);

  ExactReal& operator+=(const ExactReal& o) { return *this = *this + o; }
  ExactReal& operator-=(const ExactReal& o) { return *this = *this - o; }
  ExactReal& operator*=(const ExactReal& o) { return *this = *this * o; }

  friend bool operator<(const ExactReal& a, const ExactReal& b) { return (a - b).sign() < 0; }
  friend bool operator>(const ExactReal& a, const ExactReal& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const ExactReal& a, const ExactReal& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const ExactReal& a, const ExactReal& b) { return (a - b).sign() >= 0; }

  /// Nearest double via a guard-precision sqrt2 constant. Throws
  /// std::range_error on double overflow.
  double to_double() const;

  /// floor(value * 2^k), exact.
  Int floor_scaled_pow2(unsigned k) const;
  /// ceil(value * 2^k), exact.
  Int ceil_scaled_pow2(unsigned k) const;

  /// Exact text, e.g. "1/2", "sqrt2", "1/sqrt2", "3/32-(1/16)*sqrt2".
  std::string str() const;
};

/// sqrt(q) when it lies in Q(sqrt2), i.e. q or q/2 is a rational square.
std::optional<ExactReal> ring_sqrt(const Rational& q);

/// re + im*i with ExactReal components.
struct ExactAmp {
  ExactReal re;
  ExactReal im;

  ExactAmp() = default;
  ExactAmp(ExactReal real) : re(std::move(real)) {}  // NOLINT: implicit by design
  ExactAmp(ExactReal real, ExactReal imag) : re(std::move(real)), im(std::move(imag)) {}
  ExactAmp(long long real) : re(real) {}  // NOLINT

  static ExactAmp i() { return ExactAmp(ExactReal(0), ExactReal(1)); }
  /// 1/sqrt2 = (1/2)*sqrt2, the splitter transmit amplitude.
  static ExactAmp inv_sqrt2() { return ExactAmp(ExactReal(Rational(0), Rational(1, 2))); }
  /// i/sqrt2, the splitter reflect amplitude.
  static ExactAmp i_inv_sqrt2() {
    return ExactAmp(ExactReal(0), ExactReal(Rational(0), Rational(1, 2)));
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  bool operator==(const ExactAmp&) const = default;

  ExactAmp operator-() const { return ExactAmp(-re, -im); }
  friend ExactAmp operator+(const ExactAmp& a, const ExactAmp& b) {
    return ExactAmp(a.re + b.re, a.im + b.im);
  }
  friend ExactAmp operator-(const ExactAmp& a, const ExactAmp& b) {
    return ExactAmp(a.re - b.re, a.im - b.im);
  }
  friend ExactAmp operator*(const ExactAmp& a, const ExactAmp& b) {
    return ExactAmp(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  ExactAmp& operator+=(const ExactAmp& o) { return *this = *this + o; }
  ExactAmp& operator*=(const ExactAmp& o) { return *this = *this * o; }

  friend ExactAmp conj(const ExactAmp& a) { return ExactAmp(a.re, -a.im); }
  friend ExactReal norm_sqr(const ExactAmp& a) { return a.re * a.re + a.im * a.im; }

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  /// Exact text, e.g. "-1/4", "i", "(1/2)i", "1/sqrt2-(1/sqrt2)i".
  std::string str() const;
};

/// "a+bi" decimal rendering to the given number of places.
std::string amp_decimal_str(const std::complex<double>& a, int places = 6);

}  // namespace tisim
