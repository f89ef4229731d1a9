#pragma once

// The TI layer: one incipient transaction per nonzero outcome amplitude of
// the final state, confirmation amplitude conj(ow), Born weight |ow|^2; the
// weighted set is sampled single-shot (actualize) or in bulk (run_trials).

#include "tisim/sample.hpp"
#include "tisim/state.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tisim {

template <class Amp, class W>
struct BasicTransaction {
  BasisLabel outcome;  // every slot an absorber
  std::string label;   // rendered outcome, e.g. "D+,D-" or "ANN@GAMMA"
  Amp ow_amp;
  Amp cw_amp;  // = conj(ow_amp)
  W weight;    // = |ow_amp|^2
};

using IncipientTransaction = BasicTransaction<ExactAmp, ExactReal>;
using FloatTransaction = BasicTransaction<std::complex<double>, double>;

/// Transactions sorted by rendered outcome label (the deterministic order
/// actualize's cumulative inversion runs in).
struct TransactionSet {
  std::vector<IncipientTransaction> transactions;
};

struct FloatTransactionSet {
  std::vector<FloatTransaction> transactions;
};

/// The absorber's response amplitude to an offer-wave component.
ExactAmp cw_response(const ExactAmp& ow_amp);

/// Weighted incipient-transaction set of a final state. Requires every term
/// fully absorbed and total weight exactly 1 (throws std::invalid_argument).
TransactionSet build_mixture(const State& final_state);

/// Float-engine counterpart (weights normalized within 1e-9 of 1).
FloatTransactionSet build_mixture(const FloatState& final_state);

/// Cumulative-weight inversion: the first outcome whose cumulative weight
/// exceeds the draw. The draw is widened to an exact rational so boundary
/// classification is unambiguous. Pre: 0 <= draw < 1.
const BasisLabel& actualize(const TransactionSet& ts, double draw);

struct TrialReport {
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  std::string rng;     // generator id, fixed per report
  std::string kernel;  // counting kernel used
  std::vector<std::string> labels;        // outcome order (matches the set)
  std::vector<std::uint64_t> counts;      // sums to n_trials
};

/// Deterministic Monte Carlo: trial t consumes the t-th counter substream of
/// `seed`, so counts depend only on (set, n, seed), not on kernel or
/// execution order. Kernel defaults to the best available.
TrialReport run_trials(const TransactionSet& ts, std::uint64_t n, std::uint64_t seed,
                       std::optional<Kernel> kernel = std::nullopt);

TrialReport run_trials(const FloatTransactionSet& ts, std::uint64_t n, std::uint64_t seed,
                       std::optional<Kernel> kernel = std::nullopt);

struct FrequencyRow {
  std::string label;
  double weight = 0.0;  // expected probability
  std::uint64_t count = 0;
  double freq = 0.0;
  double z = 0.0;  // (freq - p) / sqrt(p(1-p)/n); 0 when p(1-p) = 0
};

/// Per-outcome comparison of empirical frequencies against the exact
/// weights; throws std::invalid_argument if the report's outcomes do not
/// match the set's.
std::vector<FrequencyRow> frequency_report(const TrialReport& tr, const TransactionSet& ts);

std::vector<FrequencyRow> frequency_report(const TrialReport& tr, const FloatTransactionSet& ts);

}  // namespace tisim
