#pragma once

// Sparse multi-particle superposition over labeled basis kets. A basis label
// holds one slot per particle; a slot is either a live path mode, a named
// absorber (detector/blocker outcome), or half of a joint absorption that
// consumed a particle pair. States are immutable values; every operation
// returns a new state with zero terms pruned.

#include "tisim/exact.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tisim {

enum class SlotKind : std::uint8_t { mode = 0, absorbed = 1, joint = 2 };

struct Slot {
  SlotKind kind = SlotKind::mode;
  std::string name;

  static Slot mode(std::string n) { return {SlotKind::mode, std::move(n)}; }
  static Slot absorbed(std::string n) { return {SlotKind::absorbed, std::move(n)}; }
  static Slot joint(std::string n) { return {SlotKind::joint, std::move(n)}; }

  bool is_mode() const { return kind == SlotKind::mode; }
  auto operator<=>(const Slot&) const = default;
};

struct BasisLabel {
  std::vector<Slot> slots;

  BasisLabel() = default;
  explicit BasisLabel(std::vector<Slot> s) : slots(std::move(s)) {}

  std::size_t arity() const { return slots.size(); }
  bool fully_absorbed() const {
    for (const auto& s : slots)
      if (s.is_mode()) return false;
    return true;
  }

  /// "v+,w-" for modes, "C+,C-" for absorbers; a joint absorption prints once
  /// as "ANN@<absorber>" covering both slots it consumed.
  std::string str() const {
    std::string out;
    bool first = true;
    std::vector<const std::string*> joint_seen;
    for (const auto& s : slots) {
      if (s.kind == SlotKind::joint) {
        bool seen = false;
        for (auto* j : joint_seen) seen = seen || *j == s.name;
        if (seen) continue;
        joint_seen.push_back(&s.name);
      }
      if (!first) out += ",";
      first = false;
      out += s.kind == SlotKind::joint ? "ANN@" + s.name : s.name;
    }
    return out;
  }

  auto operator<=>(const BasisLabel&) const = default;
};

class IncompleteMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Amp>
struct AmpTraits;

template <>
struct AmpTraits<ExactAmp> {
  using Weight = ExactReal;
  static ExactAmp zero() { return {}; }
  static ExactAmp one() { return ExactAmp(1); }
  static bool is_zero(const ExactAmp& a) { return a.is_zero(); }
  static Weight weight(const ExactAmp& a) { return norm_sqr(a); }
  static Weight zero_weight() { return ExactReal(0); }
  static ExactAmp transmit() { return ExactAmp::inv_sqrt2(); }
  static ExactAmp reflect() { return ExactAmp::i_inv_sqrt2(); }
  static ExactAmp phase_i() { return ExactAmp::i(); }
  /// sqrt of a rational in [0,1]; throws std::domain_error when the root is
  /// not in Q(sqrt2) (the exact engine's honesty condition).
  static ExactAmp sqrt_rational(const Rational& q) {
    auto root = ring_sqrt(q);
    if (!root)
      throw std::domain_error("sqrt(" + rational_str(q) +
                              ") is not in Q(sqrt2); use the float engine");
    return ExactAmp(*root);
  }
};

template <>
struct AmpTraits<std::complex<double>> {
  using Weight = double;
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static bool is_zero(const std::complex<double>& a) { return a.real() == 0.0 && a.imag() == 0.0; }
  static Weight weight(const std::complex<double>& a) { return std::norm(a); }
  static Weight zero_weight() { return 0.0; }
  static std::complex<double> transmit() { return {1.0 / std::numbers::sqrt2, 0.0}; }
  static std::complex<double> reflect() { return {0.0, 1.0 / std::numbers::sqrt2}; }
  static std::complex<double> phase_i() { return {0.0, 1.0}; }
  static std::complex<double> sqrt_rational(const Rational& q) {
    return {std::sqrt(rational_to_double(q)), 0.0};
  }
};

/// One entry of a single-slot linear map: target slot and amplitude factor.
template <class Amp>
using ModeImage = std::vector<std::pair<Slot, Amp>>;
template <class Amp>
using ModeMap = std::map<std::string, ModeImage<Amp>>;

/// One entry of a two-slot linear map: replacement slot pair and factor.
template <class Amp>
using PairImage = std::vector<std::pair<std::pair<Slot, Slot>, Amp>>;
template <class Amp>
using PairMap = std::map<std::pair<std::string, std::string>, PairImage<Amp>>;

template <class Amp>
class BasicState {
 public:
  using Traits = AmpTraits<Amp>;
  using Weight = typename Traits::Weight;
  using Terms = std::map<BasisLabel, Amp>;

  BasicState() = default;
  explicit BasicState(std::size_t arity) : arity_(arity) {}

  static BasicState unit(BasisLabel label) {
    BasicState s(label.arity());
    s.terms_.emplace(std::move(label), Traits::one());
    return s;
  }

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// True when every term is an outcome (no live mode slots) and at least
  /// one term exists: the shape a final state must have.
  bool fully_absorbed() const {
    for (const auto& [label, amp] : terms_)
      if (!label.fully_absorbed()) return false;
    return !terms_.empty();
  }

  void add_term(const BasisLabel& label, const Amp& amp) {
    if (label.arity() != arity_) throw std::invalid_argument("basis label arity mismatch");
    auto it = terms_.find(label);
    if (it == terms_.end()) {
      if (!Traits::is_zero(amp)) terms_.emplace(label, amp);
      return;
    }
    it->second = it->second + amp;
    if (Traits::is_zero(it->second)) terms_.erase(it);
  }

  Amp amplitude_of(const BasisLabel& label) const {
    auto it = terms_.find(label);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  Weight total_weight() const {
    Weight w = Traits::zero_weight();
    for (const auto& [label, amp] : terms_) w = w + Traits::weight(amp);
    return w;
  }

  friend BasicState operator*(const Amp& scalar, const BasicState& s) {
    BasicState out(s.arity_);
    for (const auto& [label, amp] : s.terms_) out.add_term(label, scalar * amp);
    return out;
  }

  friend BasicState operator+(const BasicState& a, const BasicState& b) {
    if (a.arity_ != b.arity_) throw std::invalid_argument("state arity mismatch");
    BasicState out = a;
    for (const auto& [label, amp] : b.terms_) out.add_term(label, amp);
    return out;
  }

  /// Tensor product; slot tuples concatenate, amplitudes multiply. Particle
  /// sets are positional, so they are disjoint by construction.
  friend BasicState tensor(const BasicState& a, const BasicState& b) {
    BasicState out(a.arity_ + b.arity_);
    for (const auto& [la, aa] : a.terms_) {
      for (const auto& [lb, ab] : b.terms_) {
        BasisLabel joined;
        joined.slots.reserve(a.arity_ + b.arity_);
        joined.slots.insert(joined.slots.end(), la.slots.begin(), la.slots.end());
        joined.slots.insert(joined.slots.end(), lb.slots.begin(), lb.slots.end());
        out.add_term(joined, aa * ab);
      }
    }
    return out;
  }

  /// Linear extension of `map` on the designated slot. Terms whose slot is
  /// already absorbed pass through unchanged. A live mode without a map entry
  /// passes through when `identity_for_unmapped` is set and raises
  /// IncompleteMapError otherwise.
  BasicState apply_mode_map(std::size_t slot, const ModeMap<Amp>& map,
                            bool identity_for_unmapped = false) const {
    if (slot >= arity_) throw std::invalid_argument("slot index out of range");
    BasicState out(arity_);
    for (const auto& [label, amp] : terms_) {
      const Slot& s = label.slots[slot];
      if (!s.is_mode()) {
        out.add_term(label, amp);
        continue;
      }
      auto it = map.find(s.name);
      if (it == map.end()) {
        if (!identity_for_unmapped)
          throw IncompleteMapError("no map entry for mode '" + s.name + "'");
        out.add_term(label, amp);
        continue;
      }
      for (const auto& [target, factor] : it->second) {
        BasisLabel next = label;
        next.slots[slot] = target;
        out.add_term(next, amp * factor);
      }
    }
    return out;
  }

  /// Linear extension of `map` on two designated slots; pairs without a map
  /// entry (including pairs with an absorbed slot) pass through unchanged.
  BasicState apply_pair_map(std::size_t slot_a, std::size_t slot_b,
                            const PairMap<Amp>& map) const {
    if (slot_a >= arity_ || slot_b >= arity_ || slot_a == slot_b)
      throw std::invalid_argument("bad slot pair");
    BasicState out(arity_);
    for (const auto& [label, amp] : terms_) {
      const Slot& sa = label.slots[slot_a];
      const Slot& sb = label.slots[slot_b];
      if (sa.is_mode() && sb.is_mode()) {
        auto it = map.find({sa.name, sb.name});
        if (it != map.end()) {
          for (const auto& [targets, factor] : it->second) {
            BasisLabel next = label;
            next.slots[slot_a] = targets.first;
            next.slots[slot_b] = targets.second;
            out.add_term(next, amp * factor);
          }
          continue;
        }
      }
      out.add_term(label, amp);
    }
    return out;
  }

  bool operator==(const BasicState&) const = default;

  /// Debug rendering: terms in lexicographic label order (map order).
  std::string str() const {
    std::string out;
    for (const auto& [label, amp] : terms_) {
      if (!out.empty()) out += "\n";
      out += "|" + label.str() + "> : " + amp_str(amp);
    }
    return out.empty() ? "(empty)" : out;
  }

 private:
  static std::string amp_str(const ExactAmp& a) { return a.str(); }
  static std::string amp_str(const std::complex<double>& a) { return amp_decimal_str(a); }

  std::size_t arity_ = 0;
  Terms terms_;
};

using State = BasicState<ExactAmp>;
using FloatState = BasicState<std::complex<double>>;

}  // namespace tisim
