#pragma once

// Circuit data model, line-oriented DSL parser, renderer and validator for
// interferometer networks: sources, 50/50 beam splitters (transmit 1/sqrt2,
// reflect i/sqrt2), mirrors (factor i, optionally disabled), two-particle
// interaction regions, detectors and blockers.

#include "tisim/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tisim {

struct SourceC {
  std::string particle;  // doubles as the component name
  std::string out;
  bool operator==(const SourceC&) const = default;
};

struct SplitterPort {
  std::string in;
  std::string transmit;
  std::string reflect;
  bool operator==(const SplitterPort&) const = default;
};

struct BeamSplitterC {
  std::string name;
  SplitterPort a;
  std::optional<SplitterPort> b;  // if present, outputs must cross port a's
  bool operator==(const BeamSplitterC&) const = default;
};

struct MirrorC {
  std::string name;
  std::string in;
  std::string out;
  bool phase = true;  // physical reflection factor i; builtins switch it off
  bool operator==(const MirrorC&) const = default;
};

struct InteractionC {
  std::string name;
  std::string path_a;  // tapped in place: applies between producer and consumer
  std::string path_b;
  Rational p_ann;
  std::string absorber;  // outcome label becomes ANN@<absorber>
  bool operator==(const InteractionC&) const = default;
};

struct DetectorC {
  std::string name;
  std::string in;
  bool operator==(const DetectorC&) const = default;
};

struct BlockerC {
  std::string name;
  std::string in;
  bool operator==(const BlockerC&) const = default;
};

using Component =
    std::variant<SourceC, BeamSplitterC, MirrorC, InteractionC, DetectorC, BlockerC>;

std::string component_name(const Component& c);

struct CircuitGraph {
  std::string name;  // builtin name or file path, echoed in reports
  std::vector<std::string> particles;
  std::vector<Component> components;
  /// Named stages for state_at_cut: alias -> component name; the cut is the
  /// state just after that component. Builtin metadata, not part of the DSL.
  std::map<std::string, std::string> cut_aliases;

  bool operator==(const CircuitGraph& o) const {
    return particles == o.particles && components == o.components;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the DSL; throws ParseError with line number and reason.
CircuitGraph parse(const std::string& text);

/// Canonical DSL text; parse(render(g)) reproduces g.
std::string render(const CircuitGraph& g);

struct Violation {
  std::string code;     // e.g. "UnterminatedPath"
  std::string subject;  // offending component or path name
  std::string message;
  bool operator==(const Violation&) const = default;
};

/// Empty iff all structural invariants hold: single producer/consumer per
/// path, one source per particle, splitter wiring sane, interaction regions
/// join different particles, the component graph is acyclic, and every path
/// chain ends in an absorber.
std::vector<Violation> validate(const CircuitGraph& g);

/// Producer/consumer wiring and particle assignment, derived from the
/// component list. Only meaningful for graphs that validate cleanly.
struct Wiring {
  struct PathInfo {
    int producer = -1;   // component index
    int consumer = -1;   // component index (interaction taps excluded)
    std::string particle;
  };
  std::map<std::string, PathInfo> paths;
  /// Dependency edges (from,to) over component indices, including
  /// interaction-region tap ordering (producer -> region -> consumer).
  std::vector<std::pair<int, int>> edges;
};

Wiring wire(const CircuitGraph& g);

/// The four built-in scenarios: "hardy", "mzi_open", "mzi_blocked",
/// "photon_pair". Throws std::invalid_argument for any other name.
CircuitGraph builtin(const std::string& name);

std::vector<std::string> builtin_names();

}  // namespace tisim
