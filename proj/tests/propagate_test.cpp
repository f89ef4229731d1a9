#include "tisim/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/oracle.hpp"

using namespace tisim;

namespace {

BasisLabel one_slot(Slot s) {
  BasisLabel l;
  l.slots = {std::move(s)};
  return l;
}

BasisLabel two_slots(Slot a, Slot b) {
  BasisLabel l;
  l.slots = {std::move(a), std::move(b)};
  return l;
}

// "C+,C-" -> absorbed pair, "ANN@GAMMA" -> joint pair, "C" -> absorbed single.
BasisLabel label_from_string(const std::string& text, std::size_t slots) {
  if (text.rfind("ANN@", 0) == 0) {
    std::string absorber = text.substr(4);
    return two_slots(Slot::joint(absorber), Slot::joint(absorber));
  }
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    REQUIRE(slots == 1);
    return one_slot(Slot::absorbed(text));
  }
  return two_slots(Slot::absorbed(text.substr(0, comma)), Slot::absorbed(text.substr(comma + 1)));
}

ExactAmp amp_from_oracle(const oracle::detail::GaussInt& g, long long den) {
  return ExactAmp(ExactReal(Rational(g.re, den)), ExactReal(Rational(g.im, den)));
}

int position_of(const Schedule& s, const CircuitGraph& g, const std::string& name) {
  for (std::size_t i = 0; i < s.order.size(); ++i)
    if (component_name(g.components[s.order[i]]) == name) return static_cast<int>(i);
  FAIL("component not scheduled: ", name);
  return -1;
}

}  // namespace

TEST_SUITE("propagate") {
  TEST_CASE("schedule follows declaration order when dependencies allow") {
    CircuitGraph g = builtin("mzi_open");
    Schedule s = make_schedule(g);
    REQUIRE(s.order.size() == g.components.size());
    for (std::size_t i = 0; i < s.order.size(); ++i) CHECK(s.order[i] == static_cast<int>(i));
    CHECK(s.cuts.at("sources") == 1);
    CHECK(s.cuts.at("BS1") == 2);
    CHECK(s.cuts.at("after_first_splitter") == s.cuts.at("Mw"));
    CHECK(s.cuts.at("D") == g.components.size());
  }

  TEST_CASE("schedule places the interaction between mirrors and second splitters") {
    CircuitGraph g = builtin("hardy");
    Schedule s = make_schedule(g);
    int ir = position_of(s, g, "IR");
    CHECK(position_of(s, g, "Mw+") < ir);
    CHECK(position_of(s, g, "Mw-") < ir);
    CHECK(ir < position_of(s, g, "BS2+"));
    CHECK(ir < position_of(s, g, "BS2-"));
    CHECK(s.cuts.at("sources") == 2);
    CHECK(s.cuts.at("after_first_splitters") == s.cuts.at("Mw-"));
  }

  TEST_CASE("schedule rejects cyclic graphs") {
    CircuitGraph ring;
    ring.particles = {"q"};
    ring.components = {SourceC{"q", "s"}, DetectorC{"S", "s"}, MirrorC{"A", "x", "y", false},
                       MirrorC{"B", "y", "x", false}};
    CHECK_THROWS_AS(make_schedule(ring), std::logic_error);
  }

  TEST_CASE("the sources cut is the product ket") {
    CircuitGraph g = builtin("hardy");
    State s = state_at_cut(g, "sources");
    CHECK(s.terms().size() == 1);
    CHECK(s.amplitude_of(two_slots(Slot::mode("s+"), Slot::mode("s-"))) == ExactAmp(1));
  }

  TEST_CASE("hardy state after the first splitters") {
    State s = state_at_cut(builtin("hardy"), "after_first_splitters");
    REQUIRE(s.terms().size() == 4);
    ExactAmp half(ExactReal(Rational(1, 2)));
    ExactAmp ihalf(ExactReal(0), ExactReal(Rational(1, 2)));
    CHECK(s.amplitude_of(two_slots(Slot::mode("v+"), Slot::mode("v-"))) == half);
    CHECK(s.amplitude_of(two_slots(Slot::mode("v+"), Slot::mode("w-"))) == ihalf);
    CHECK(s.amplitude_of(two_slots(Slot::mode("w+"), Slot::mode("v-"))) == ihalf);
    CHECK(s.amplitude_of(two_slots(Slot::mode("w+"), Slot::mode("w-"))) == -half);
    CHECK(s.total_weight() == ExactReal(1));
  }

  TEST_CASE("single interferometer state after its splitter") {
    State s = state_at_cut(builtin("mzi_open"), "after_first_splitter");
    CHECK(s.amplitude_of(one_slot(Slot::mode("v"))) == ExactAmp::inv_sqrt2());
    CHECK(s.amplitude_of(one_slot(Slot::mode("w"))) == ExactAmp::i_inv_sqrt2());
    CHECK_THROWS_AS(state_at_cut(builtin("mzi_open"), "nonsense"), std::invalid_argument);
  }

  TEST_CASE("hardy final amplitudes match the brute-force expansion") {
    State s = propagate(builtin("hardy"));
    CHECK(s.fully_absorbed());
    CHECK(s.total_weight() == ExactReal(1));

    // Hand-checked values first.
    ExactReal q(Rational(1, 4));
    CHECK(s.amplitude_of(label_from_string("ANN@GAMMA", 2)) ==
          ExactAmp(ExactReal(Rational(-1, 2))));
    CHECK(s.amplitude_of(label_from_string("C+,C-", 2)) == ExactAmp(ExactReal(Rational(-3, 4))));
    CHECK(s.amplitude_of(label_from_string("C+,D-", 2)) == ExactAmp(ExactReal(0), q));
    CHECK(s.amplitude_of(label_from_string("D+,C-", 2)) == ExactAmp(ExactReal(0), q));
    CHECK(s.amplitude_of(label_from_string("D+,D-", 2)) == ExactAmp(ExactReal(Rational(-1, 4))));

    // Full agreement with the independent enumeration.
    auto expected = oracle::overlap_amplitudes_over8(true);
    for (const auto& [label, gauss] : expected)
      CHECK(s.amplitude_of(label_from_string(label, 2)) == amp_from_oracle(gauss, 8));
    for (const auto& [label, amp] : s.terms()) {
      REQUIRE(expected.count(label.str()) == 1);
      (void)amp;
    }

    // The headline joint-detection weight.
    auto weights = oracle::hardy_weights();
    auto dd = weights.at("D+,D-");
    CHECK(norm_sqr(s.amplitude_of(label_from_string("D+,D-", 2))) ==
          ExactReal(Rational(dd.num, dd.den)));
    CHECK(dd == oracle::Frac{1, 16});
    for (const auto& [label, frac] : weights)
      CHECK(norm_sqr(s.amplitude_of(label_from_string(label, 2))) ==
            ExactReal(Rational(frac.num, frac.den)));
  }

  TEST_CASE("photon pair exits both bright ports") {
    State s = propagate(builtin("photon_pair"));
    CHECK(s.fully_absorbed());
    CHECK(s.terms().size() == 1);
    CHECK(s.amplitude_of(label_from_string("C+,C-", 2)) == ExactAmp(-1));
    for (const auto& [label, amps] : oracle::photon_pair_amplitudes()) {
      ExactAmp expected(ExactReal(Rational(amps.first.num, amps.first.den)),
                        ExactReal(Rational(amps.second.num, amps.second.den)));
      CHECK(s.amplitude_of(label_from_string(label, 2)) == expected);
    }
  }

  TEST_CASE("open interferometer is dark at D") {
    State s = propagate(builtin("mzi_open"));
    CHECK(s.terms().size() == 1);
    CHECK(s.amplitude_of(one_slot(Slot::absorbed("C"))) == ExactAmp::i());
    CHECK(s.amplitude_of(one_slot(Slot::absorbed("D"))) == ExactAmp());
    auto expected = oracle::mzi_open_amplitudes();
    CHECK(expected.at("C").first == oracle::Frac{0, 1});
    CHECK(expected.at("C").second == oracle::Frac{1, 1});
    CHECK(expected.at("D").first == oracle::Frac{0, 1});
    CHECK(expected.at("D").second == oracle::Frac{0, 1});
  }

  TEST_CASE("blocked interferometer splits its surviving amplitude") {
    State s = propagate(builtin("mzi_blocked"));
    CHECK(s.fully_absorbed());
    for (const auto& [label, frac] : oracle::mzi_blocked_weights())
      CHECK(norm_sqr(s.amplitude_of(one_slot(Slot::absorbed(label)))) ==
            ExactReal(Rational(frac.num, frac.den)));
    CHECK(s.total_weight() == ExactReal(1));
  }

  TEST_CASE("norm is conserved after every component") {
    for (const char* name : {"hardy", "mzi_open", "mzi_blocked", "photon_pair"}) {
      auto steps = step_states(builtin(name));
      REQUIRE(!steps.empty());
      for (const auto& [component, state] : steps) {
        INFO(name, " after ", component);
        CHECK(state.total_weight() == ExactReal(1));
      }
      CHECK(steps.back().second.fully_absorbed());
    }
  }

  TEST_CASE("float engine agrees with the exact engine") {
    for (const char* name : {"hardy", "mzi_open", "mzi_blocked", "photon_pair"}) {
      CircuitGraph g = builtin(name);
      State exact = propagate(g);
      FloatState approx = propagate_float(g);
      CHECK(std::abs(approx.total_weight() - 1.0) < 1e-12);
      for (const auto& [label, amp] : exact.terms())
        CHECK(std::abs(approx.amplitude_of(label) - amp.to_complex()) < 1e-12);
      for (const auto& [label, amp] : approx.terms())
        CHECK(std::abs(exact.amplitude_of(label).to_complex() - amp) < 1e-12);
      FloatState cut = state_at_cut_float(g, "sources");
      CHECK(cut.terms().size() == 1);
    }
  }

  TEST_CASE("named cuts lists sources plus the aliases") {
    auto cuts = named_cuts(builtin("hardy"));
    CHECK(std::find(cuts.begin(), cuts.end(), "sources") != cuts.end());
    CHECK(std::find(cuts.begin(), cuts.end(), "after_first_splitters") != cuts.end());
  }
}
