#pragma once

// Offer-wave propagation: deterministic topological scheduling with named
// cut points, and a single forward pass evolving the joint state from the
// source product ket to the final all-absorbed superposition. Works for the
// exact engine and the float engine through the same walker.

#include "tisim/circuit.hpp"
#include "tisim/state.hpp"

#include <map>
#include <string>
#include <vector>

namespace tisim {

struct Schedule {
  /// Component indices in dependency order; ties broken by declaration order.
  std::vector<int> order;
  /// Cut name -> number of leading schedule entries applied at that cut.
  /// Contains every component name, the universal cut "sources" (all source
  /// components applied), and the graph's cut aliases.
  std::map<std::string, std::size_t> cuts;
};

/// Deterministic schedule; throws std::logic_error on a cycle (validation
/// rejects cyclic graphs first, but the walker defends itself).
Schedule make_schedule(const CircuitGraph& g);

namespace detail {

template <class Amp>
class Walker {
 public:
  explicit Walker(const CircuitGraph& g) : g_(g), wiring_(wire(g)) {
    for (std::size_t i = 0; i < g.particles.size(); ++i) slot_[g.particles[i]] = i;
  }

  BasicState<Amp> initial() const {
    BasisLabel label;
    label.slots.resize(g_.particles.size());
    for (const auto& c : g_.components) {
      if (const auto* s = std::get_if<SourceC>(&c))
        label.slots[slot_.at(s->particle)] = Slot::mode(s->out);
    }
    for (std::size_t i = 0; i < label.slots.size(); ++i)
      if (label.slots[i].name.empty())
        throw std::logic_error("particle '" + g_.particles[i] + "' has no source");
    return BasicState<Amp>::unit(std::move(label));
  }

  BasicState<Amp> apply(const Component& c, const BasicState<Amp>& s) const {
    using Traits = AmpTraits<Amp>;
    return std::visit(
        [&](const auto& x) -> BasicState<Amp> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SourceC>) {
            return s;  // the initial state already holds the source ket
          } else if constexpr (std::is_same_v<T, BeamSplitterC>) {
            ModeMap<Amp> map;
            map[x.a.in] = {{Slot::mode(x.a.transmit), Traits::transmit()},
                           {Slot::mode(x.a.reflect), Traits::reflect()}};
            if (x.b)
              map[x.b->in] = {{Slot::mode(x.b->transmit), Traits::transmit()},
                              {Slot::mode(x.b->reflect), Traits::reflect()}};
            return s.apply_mode_map(slot_for_path(x.a.in), map, true);
          } else if constexpr (std::is_same_v<T, MirrorC>) {
            ModeMap<Amp> map;
            map[x.in] = {{Slot::mode(x.out), x.phase ? Traits::phase_i() : Traits::one()}};
            return s.apply_mode_map(slot_for_path(x.in), map, true);
          } else if constexpr (std::is_same_v<T, InteractionC>) {
            PairMap<Amp> map;
            map[{x.path_a, x.path_b}] = {
                {{Slot::joint(x.absorber), Slot::joint(x.absorber)},
                 Traits::sqrt_rational(x.p_ann)},
                {{Slot::mode(x.path_a), Slot::mode(x.path_b)},
                 Traits::sqrt_rational(Rational(1) - x.p_ann)}};
            return s.apply_pair_map(slot_for_path(x.path_a), slot_for_path(x.path_b), map);
          } else {  // DetectorC / BlockerC
            ModeMap<Amp> map;
            map[x.in] = {{Slot::absorbed(x.name), Traits::one()}};
            return s.apply_mode_map(slot_for_path(x.in), map, true);
          }
        },
        c);
  }

  std::size_t slot_for_path(const std::string& path) const {
    auto it = wiring_.paths.find(path);
    if (it == wiring_.paths.end() || it->second.particle.empty())
      throw std::logic_error("path '" + path + "' has no particle assignment");
    return slot_.at(it->second.particle);
  }

 private:
  const CircuitGraph& g_;
  Wiring wiring_;
  std::map<std::string, std::size_t> slot_;
};

}  // namespace detail

/// Final exact state: every slot absorbed, total weight exactly 1. Enforces
/// norm conservation after every component (throws std::logic_error if the
/// audit fails — which would indicate an engine bug, not bad input).
State propagate(const CircuitGraph& g);

/// Same pass in double-precision arithmetic (audit tolerance 1e-9).
FloatState propagate_float(const CircuitGraph& g);

/// Exact intermediate state at a named cut; throws std::invalid_argument for
/// an unknown cut name.
State state_at_cut(const CircuitGraph& g, const std::string& cut);

/// Float-engine counterpart, for traces under --engine float.
FloatState state_at_cut_float(const CircuitGraph& g, const std::string& cut);

/// (component name, state after applying it) for every schedule entry; used
/// by the per-step norm-audit property tests.
std::vector<std::pair<std::string, State>> step_states(const CircuitGraph& g);

/// Cut names worth printing in a trace: "sources" plus the graph's aliases.
std::vector<std::string> named_cuts(const CircuitGraph& g);

}  // namespace tisim
