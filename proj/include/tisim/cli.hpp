#pragma once

// Command implementations behind the tisim executable. Each command writes
// its report to `out`, diagnostics to `err`, and returns the process exit
// code: 0 success, 1 internal error, 2 parse/validation failure, 3 I/O
// failure. Streams are injected so tests can run commands in-process.

#include "tisim/circuit.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace tisim {

struct RunConfig {
  std::string builtin_name;  // exactly one of builtin_name / file is set
  std::string file;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::optional<Rational> p_ann;  // overrides every interaction region
  std::string engine = "exact";   // "exact" | "float"
  std::string format = "table";   // "table" | "json" | "csv"
};

/// Loads the configured circuit (builtin or file), applies the p_ann
/// override, and rejects graphs with validation violations. Throws:
/// std::ios_base::failure (unreadable file), ParseError, and
/// std::invalid_argument (unknown builtin, bad override, violations).
CircuitGraph load_circuit(const RunConfig& cfg);

/// Exact (or float) outcome weights of the configured circuit.
int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Monte Carlo frequencies against the exact weights.
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Per-outcome OW/CW amplitudes and weights plus the named cut states.
int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Structural diagnostics: "OK" and exit 0 when clean, one line per
/// violation and exit 2 otherwise, exit 3 when the file cannot be read.
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace tisim
