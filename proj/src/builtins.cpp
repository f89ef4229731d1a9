#include "tisim/circuit.hpp"

#include <stdexcept>

namespace tisim {

namespace {

// Single Mach-Zehnder interferometer. BS1 transmits s into the v arm and
// reflects into the w arm; phase-off mirrors fold the arms onto BS2, which
// transmits v to d / reflects to c and transmits w to c / reflects to d, so
// the two c contributions interfere constructively and d goes dark.
constexpr const char* kMziOpen = R"(# open Mach-Zehnder: both arms clear
particle q
source q -> s
beamsplitter BS1 in s (transmit v0, reflect w0)
mirror Mv v0 -> v phase off
mirror Mw w0 -> w phase off
beamsplitter BS2 in v (transmit d, reflect c) in w (transmit c, reflect d)
detector C in c
detector D in d
)";

// Same interferometer with an obstruction in the w arm; BS2 keeps only its
// v input. The blocker's outcome label is "blocked".
constexpr const char* kMziBlocked = R"(# Mach-Zehnder with the w arm obstructed
particle q
source q -> s
beamsplitter BS1 in s (transmit v0, reflect w0)
mirror Mv v0 -> v phase off
mirror Mw w0 -> w phase off
blocker blocked in w
beamsplitter BS2 in v (transmit d, reflect c)
detector C in c
detector D in d
)";

// Two overlapping interferometers whose w arms share an interaction region.
// With p_ann = 1 an overlapping pair annihilates into the GAMMA absorber;
// with p_ann = 0 the pair passes through untouched.
std::string overlap_text(const std::string& plus, const std::string& minus,
                         const std::string& p_ann) {
  std::string t;
  t += "particle " + plus + "\n";
  t += "particle " + minus + "\n";
  t += "source " + plus + " -> s+\n";
  t += "source " + minus + " -> s-\n";
  t += "beamsplitter BS1+ in s+ (transmit v0+, reflect w0+)\n";
  t += "beamsplitter BS1- in s- (transmit v0-, reflect w0-)\n";
  t += "mirror Mv+ v0+ -> v+ phase off\n";
  t += "mirror Mw+ w0+ -> w+ phase off\n";
  t += "mirror Mv- v0- -> v- phase off\n";
  t += "mirror Mw- w0- -> w- phase off\n";
  t += "interact IR w+ w- p_ann " + p_ann + " -> GAMMA\n";
  t += "beamsplitter BS2+ in v+ (transmit d+, reflect c+) in w+ (transmit c+, reflect d+)\n";
  t += "beamsplitter BS2- in v- (transmit d-, reflect c-) in w- (transmit c-, reflect d-)\n";
  t += "detector C+ in c+\n";
  t += "detector D+ in d+\n";
  t += "detector C- in c-\n";
  t += "detector D- in d-\n";
  return t;
}

}  // namespace

CircuitGraph builtin(const std::string& name) {
  CircuitGraph g;
  if (name == "mzi_open") {
    g = parse(kMziOpen);
    g.cut_aliases["after_first_splitter"] = "Mw";
  } else if (name == "mzi_blocked") {
    g = parse(kMziBlocked);
    g.cut_aliases["after_first_splitter"] = "Mw";
  } else if (name == "hardy") {
    g = parse(overlap_text("e+", "e-", "1"));
    g.cut_aliases["after_first_splitters"] = "Mw-";
  } else if (name == "photon_pair") {
    g = parse(overlap_text("g+", "g-", "0"));
    g.cut_aliases["after_first_splitters"] = "Mw-";
  } else {
    throw std::invalid_argument("unknown builtin circuit '" + name + "'");
  }
  g.name = name;
  return g;
}

std::vector<std::string> builtin_names() {
  return {"hardy", "mzi_blocked", "mzi_open", "photon_pair"};
}

}  // namespace tisim
