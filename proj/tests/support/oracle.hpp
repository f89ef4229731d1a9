#pragma once

// Independent brute-force oracle for the built-in scenarios. Deliberately
// self-contained: no simulator headers, plain integer arithmetic only. It
// expands the known two-particle state after the first splitters
//
//   (1/2) [ |v+,v->  +  i |v+,w->  +  i |w+,v->  -  |w+,w-> ]
//
// through the annihilation rule on |w+,w-> and the second splitters
// (v -> (d + i c)/sqrt2, w -> (c + i d)/sqrt2) by direct 4x4 term
// enumeration, tracking Gaussian-integer numerators over a common
// denominator. The single-interferometer cases expand (1/sqrt2)(|v> + i|w>)
// the same way. Everything stays rational because amplitudes only ever
// carry even powers of 1/sqrt2 here.

#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>

namespace oracle {

struct Frac {
  long long num = 0;
  long long den = 1;
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num * b.den == b.num * a.den;
  }
};

inline Frac reduced(long long num, long long den) {
  assert(den > 0);
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

namespace detail {

struct GaussInt {
  long long re = 0;
  long long im = 0;
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  long long norm() const { return re * re + im * im; }
};

// Images of one particle's arm mode under its second splitter, numerators
// only (the shared 1/sqrt2 factors are folded into the caller's
// denominator): v transmits to d and reflects to c; w transmits to c and
// reflects to d.
inline void splitter_images(char arm, char detector_sign,
                            std::pair<std::string, GaussInt> out[2]) {
  std::string c = std::string("C") + detector_sign;
  std::string d = std::string("D") + detector_sign;
  if (arm == 'v') {
    out[0] = {d, {1, 0}};
    out[1] = {c, {0, 1}};
  } else {
    out[0] = {c, {1, 0}};
    out[1] = {d, {0, 1}};
  }
}

}  // namespace detail

/// Final amplitudes of the overlapping-interferometer scenario as Gaussian
/// numerators over denominator 8, for annihilate = true (the pair case
/// p_ann = 1) or false (p_ann = 0). Detector outcomes are labeled
/// "<X+>,<Y->"; the annihilation outcome is labeled "ANN@GAMMA".
inline std::map<std::string, detail::GaussInt> overlap_amplitudes_over8(bool annihilate) {
  using detail::GaussInt;
  struct CutTerm {
    char plus_arm, minus_arm;
    GaussInt coeff;  // over denominator 4
  };
  const CutTerm cut[4] = {
      {'v', 'v', {2, 0}},
      {'v', 'w', {0, 2}},
      {'w', 'v', {0, 2}},
      {'w', 'w', {-2, 0}},
  };

  std::map<std::string, GaussInt> amps;
  for (const CutTerm& t : cut) {
    if (annihilate && t.plus_arm == 'w' && t.minus_arm == 'w') {
      // Annihilated amplitude skips both second splitters; scale its
      // denominator-4 numerator up to the common denominator 8.
      GaussInt scaled{t.coeff.re * 2, t.coeff.im * 2};
      amps["ANN@GAMMA"] = amps["ANN@GAMMA"] + scaled;
      continue;
    }
    std::pair<std::string, GaussInt> plus[2], minus[2];
    detail::splitter_images(t.plus_arm, '+', plus);
    detail::splitter_images(t.minus_arm, '-', minus);
    for (const auto& [plus_det, plus_amp] : plus) {
      for (const auto& [minus_det, minus_amp] : minus) {
        std::string label = plus_det + "," + minus_det;
        amps[label] = amps[label] + t.coeff * plus_amp * minus_amp;
      }
    }
  }
  return amps;
}

/// Outcome weights of the pair scenario with certain annihilation.
inline std::map<std::string, Frac> hardy_weights() {
  std::map<std::string, Frac> w;
  for (const auto& [label, amp] : overlap_amplitudes_over8(true)) {
    if (amp.norm() == 0) continue;
    w[label] = reduced(amp.norm(), 64);
  }
  return w;
}

/// Final amplitudes (re, im as fractions) of the p_ann = 0 variant.
inline std::map<std::string, std::pair<Frac, Frac>> photon_pair_amplitudes() {
  std::map<std::string, std::pair<Frac, Frac>> out;
  for (const auto& [label, amp] : overlap_amplitudes_over8(false))
    out[label] = {reduced(amp.re, 8), reduced(amp.im, 8)};
  return out;
}

/// Single interferometer, both arms clear: expand
/// (1/sqrt2)[|v> + i|w>] through v -> (d+ic)/sqrt2, w -> (c+id)/sqrt2.
/// Numerators over denominator 2.
inline std::map<std::string, std::pair<Frac, Frac>> mzi_open_amplitudes() {
  using detail::GaussInt;
  std::map<std::string, GaussInt> amps;
  const std::pair<char, GaussInt> cut[2] = {{'v', {1, 0}}, {'w', {0, 1}}};
  for (const auto& [arm, coeff] : cut) {
    std::pair<std::string, GaussInt> images[2];
    detail::splitter_images(arm, '\0', images);
    for (const auto& [det, amp] : images) {
      std::string label = det.substr(0, 1);  // "C" / "D"
      amps[label] = amps[label] + coeff * amp;
    }
  }
  std::map<std::string, std::pair<Frac, Frac>> out;
  for (const auto& [label, amp] : amps) out[label] = {reduced(amp.re, 2), reduced(amp.im, 2)};
  return out;
}

/// Single interferometer with the w arm obstructed: |w> is absorbed by the
/// blocker (weight |i/sqrt2|^2 = 1/2) and only |v> reaches the second
/// splitter, splitting its weight 1/2 evenly between D and C.
inline std::map<std::string, Frac> mzi_blocked_weights() {
  return {{"blocked", {1, 2}}, {"C", {1, 4}}, {"D", {1, 4}}};
}

}  // namespace oracle
