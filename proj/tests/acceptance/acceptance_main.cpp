// Acceptance gate for the simulator. Runs every shipping criterion against
// the real CLI binary (--cli <path>) plus in-process engine checks, printing
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tisim/propagate.hpp"
#include "tisim/transact.hpp"
#include "../support/oracle.hpp"
#include "../support/random_circuit.hpp"

using namespace tisim;
using nlohmann::json;

namespace {

std::string g_cli;
int g_failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

void criterion(int n, const std::string& what, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(n, what, ok, ok ? "" : detail);
}

// Runs the CLI, captures stdout, returns the exit code (-1 on spawn failure).
int run_cli(const std::string& args, std::string& out) {
  std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  out.clear();
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json cli_json(const std::string& args) {
  std::string out;
  int code = run_cli(args, out);
  if (code != 0) throw std::runtime_error("CLI exited with code " + std::to_string(code));
  return json::parse(out);
}

json outcome_row(const json& report, const std::string& label) {
  for (const auto& row : report.at("outcomes"))
    if (row.at("label") == label) return row;
  throw std::runtime_error("no outcome labeled '" + label + "'");
}

ExactReal frac(const oracle::Frac& f) { return ExactReal(Rational(f.num, f.den)); }

BasisLabel absorbed_pair(const std::string& a, const std::string& b) {
  BasisLabel l;
  l.slots = {Slot::absorbed(a), Slot::absorbed(b)};
  return l;
}

BasisLabel absorbed_one(const std::string& a) {
  BasisLabel l;
  l.slots = {Slot::absorbed(a)};
  return l;
}

BasisLabel joint_pair(const std::string& absorber) {
  BasisLabel l;
  l.slots = {Slot::joint(absorber), Slot::joint(absorber)};
  return l;
}

void check_1_and_2() {
  json j = cli_json("exact --builtin hardy --format json");
  criterion(1, "hardy (D+,D-) weight is exactly 1/16", [&](std::string& detail) {
    json row = outcome_row(j, "D+,D-");
    detail = "weight_exact=" + row.at("weight_exact").get<std::string>();
    return row.at("weight_exact") == "1/16";
  });
  criterion(2, "hardy annihilation weight is exactly 1/4", [&](std::string& detail) {
    json row = outcome_row(j, "ANN@GAMMA");
    detail = "weight_exact=" + row.at("weight_exact").get<std::string>();
    return row.at("weight_exact") == "1/4";
  });
}

void check_3() {
  criterion(3, "full hardy distribution matches the independent oracle, sum 1, under 1s",
            [&](std::string& detail) {
              auto start = std::chrono::steady_clock::now();
              TransactionSet ts = build_mixture(propagate(builtin("hardy")));
              double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                             start).count();

              const std::pair<const char*, Rational> frozen[] = {
                  {"ANN@GAMMA", Rational(1, 4)}, {"C+,C-", Rational(9, 16)},
                  {"C+,D-", Rational(1, 16)},    {"D+,C-", Rational(1, 16)},
                  {"D+,D-", Rational(1, 16)},
              };
              if (ts.transactions.size() != 5) {
                detail = "expected 5 outcomes, got " + std::to_string(ts.transactions.size());
                return false;
              }
              auto expected = oracle::hardy_weights();
              ExactReal total(0);
              for (std::size_t i = 0; i < 5; ++i) {
                const auto& t = ts.transactions[i];
                if (t.label != frozen[i].first) {
                  detail = "unexpected outcome order at " + t.label;
                  return false;
                }
                if (t.weight != ExactReal(frozen[i].second) ||
                    t.weight != frac(expected.at(t.label))) {
                  detail = "weight mismatch at " + t.label + ": " + t.weight.str();
                  return false;
                }
                total = total + t.weight;
              }
              if (total != ExactReal(1)) {
                detail = "weights sum to " + total.str();
                return false;
              }
              if (elapsed >= 1.0) {
                detail = "took " + std::to_string(elapsed) + "s";
                return false;
              }
              return true;
            });
}

void check_4() {
  criterion(4, "trace shows the -1/4 joint offer wave and the four-term cut state",
            [&](std::string& detail) {
              json j = cli_json("trace --builtin hardy --format json");
              bool found_dd = false;
              for (const auto& t : j.at("transactions")) {
                if (t.at("label") != "D+,D-") continue;
                found_dd = true;
                if (t.at("ow") != "-1/4") {
                  detail = "D+,D- ow=" + t.at("ow").get<std::string>();
                  return false;
                }
              }
              if (!found_dd) {
                detail = "no D+,D- transaction in the trace";
                return false;
              }
              const std::pair<const char*, const char*> cut[] = {
                  {"v+,v-", "1/2"}, {"v+,w-", "(1/2)i"}, {"w+,v-", "(1/2)i"}, {"w+,w-", "-1/2"}};
              const json& terms = j.at("cuts").at("after_first_splitters");
              if (terms.size() != 4) {
                detail = "cut has " + std::to_string(terms.size()) + " terms";
                return false;
              }
              for (const auto& [term, amp] : cut) {
                bool found = false;
                for (const auto& row : terms)
                  found = found || (row.at("term") == term && row.at("amp") == amp);
                if (!found) {
                  detail = std::string("missing cut term ") + term + " = " + amp;
                  return false;
                }
              }
              return true;
            });
}

void check_5() {
  criterion(5, "open interferometer: amplitude exactly i at C, weight 0 at D",
            [&](std::string& detail) {
              State s = propagate(builtin("mzi_open"));
              if (s.amplitude_of(absorbed_one("C")) != ExactAmp::i()) {
                detail = "C amp " + s.amplitude_of(absorbed_one("C")).str();
                return false;
              }
              return s.amplitude_of(absorbed_one("D")) == ExactAmp();
            });
}

void check_6() {
  criterion(6, "photon pair: amplitude exactly -1 at (C+,C-), zero at (D+,D-)",
            [&](std::string& detail) {
              State s = propagate(builtin("photon_pair"));
              if (s.amplitude_of(absorbed_pair("C+", "C-")) != ExactAmp(-1)) {
                detail = "C+,C- amp " + s.amplitude_of(absorbed_pair("C+", "C-")).str();
                return false;
              }
              return s.amplitude_of(absorbed_pair("D+", "D-")) == ExactAmp() &&
                     s.terms().size() == 1;
            });
}

void check_7() {
  criterion(7, "blocked interferometer weights {blocked 1/2, C 1/4, D 1/4}; open D dark",
            [&](std::string& detail) {
              State s = propagate(builtin("mzi_blocked"));
              for (const auto& [label, f] : oracle::mzi_blocked_weights()) {
                ExactReal w = norm_sqr(s.amplitude_of(absorbed_one(label)));
                if (w != frac(f)) {
                  detail = label + " weight " + w.str();
                  return false;
                }
              }
              State open_mzi = propagate(builtin("mzi_open"));
              return open_mzi.amplitude_of(absorbed_one("D")) == ExactAmp();
            });
}

void check_8() {
  criterion(8, "one million seeded trials: < 60s, all |z| < 5, bit-exact rerun",
            [&](std::string& detail) {
              const std::string args =
                  "run --builtin hardy --trials 1000000 --seed 42 --format json";
              auto start = std::chrono::steady_clock::now();
              std::string first, second;
              if (run_cli(args, first) != 0) {
                detail = "first run failed";
                return false;
              }
              double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                             start).count();
              if (elapsed >= 60.0) {
                detail = "took " + std::to_string(elapsed) + "s";
                return false;
              }
              json j = json::parse(first);
              for (const auto& row : j.at("outcomes")) {
                double z = row.at("z").get<double>();
                if (!(std::abs(z) < 5.0)) {
                  detail = row.at("label").get<std::string>() + " z=" + std::to_string(z);
                  return false;
                }
              }
              if (run_cli(args, second) != 0) {
                detail = "second run failed";
                return false;
              }
              if (first != second) {
                detail = "reruns differ";
                return false;
              }
              return true;
            });
}

void check_9() {
  criterion(9, "property suites: field axioms, norm conservation, float agreement, unitarity, round-trip",
            [&](std::string& detail) {
              // (a) field axioms + norm multiplicativity on 10^4 operands.
              testgen::Lcg rng(2026);
              auto rnd_real = [&] {
                return ExactReal(Rational(int(rng.below(13)) - 6, 1 + int(rng.below(5))),
                                 Rational(int(rng.below(13)) - 6, 1 + int(rng.below(5))));
              };
              for (int i = 0; i < 10000; ++i) {
                ExactAmp a(rnd_real(), rnd_real()), b(rnd_real(), rnd_real()),
                    c(rnd_real(), rnd_real());
                if ((a + b) * c != a * c + b * c || (a * b) * c != a * (b * c) ||
                    norm_sqr(a * b) != norm_sqr(a) * norm_sqr(b) ||
                    conj(a * b) != conj(a) * conj(b)) {
                  detail = "field axiom violated at sample " + std::to_string(i);
                  return false;
                }
              }

              // (d) splitter unitarity, exact.
              ExactAmp t = ExactAmp::inv_sqrt2(), r = ExactAmp::i_inv_sqrt2();
              if (conj(t) * t + conj(r) * r != ExactAmp(1) ||
                  conj(t) * r + conj(r) * t != ExactAmp(0)) {
                detail = "splitter matrix not unitary";
                return false;
              }

              // (b) norm conservation on builtins + 100 random circuits,
              // (e) parse/render round-trip on the same corpus.
              std::vector<CircuitGraph> graphs;
              for (const char* name : {"hardy", "mzi_open", "mzi_blocked", "photon_pair"})
                graphs.push_back(builtin(name));
              for (std::uint64_t seed = 0; seed < 100; ++seed)
                graphs.push_back(testgen::random_circuit(seed));
              for (const auto& g : graphs) {
                if (!validate(g).empty()) {
                  detail = g.name + " fails validation";
                  return false;
                }
                if (!(parse(render(g)) == g)) {
                  detail = g.name + " does not round-trip";
                  return false;
                }
                for (const auto& [component, state] : step_states(g)) {
                  if (!(state.total_weight() == ExactReal(1))) {
                    detail = g.name + " loses norm after " + component;
                    return false;
                  }
                }
              }

              // (c) exact vs float agreement on the builtins.
              for (const char* name : {"hardy", "mzi_open", "mzi_blocked", "photon_pair"}) {
                CircuitGraph g = builtin(name);
                State exact = propagate(g);
                FloatState approx = propagate_float(g);
                for (const auto& [label, amp] : exact.terms())
                  if (std::abs(approx.amplitude_of(label) - amp.to_complex()) >= 1e-12) {
                    detail = std::string(name) + " float disagreement at " + label.str();
                    return false;
                  }
              }
              return true;
            });
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
  if (g_cli.empty()) {
    std::cerr << "usage: tisim_acceptance --cli <path-to-tisim>\n";
    return 2;
  }

  try {
    check_1_and_2();
  } catch (const std::exception& e) {
    report(1, "hardy exact weights", false, e.what());
    report(2, "hardy exact weights", false, e.what());
  }
  check_3();
  check_4();
  check_5();
  check_6();
  check_7();
  check_8();
  check_9();

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
