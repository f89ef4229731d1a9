#include "tisim/transact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tisim {

ExactAmp cw_response(const ExactAmp& ow_amp) { return conj(ow_amp); }

namespace {

template <class Set, class StateT, class Conj, class Weigh>
Set mixture_of(const StateT& f, Conj conjugate, Weigh weigh) {
  Set out;
  for (const auto& [label, amp] : f.terms()) {
    if (!label.fully_absorbed())
      throw std::invalid_argument("state has unabsorbed offer-wave components");
    out.transactions.push_back({label, label.str(), amp, conjugate(amp), weigh(amp)});
  }
  std::sort(out.transactions.begin(), out.transactions.end(), [](const auto& a, const auto& b) {
    return a.label != b.label ? a.label < b.label : a.outcome < b.outcome;
  });
  return out;
}

}  // namespace

TransactionSet build_mixture(const State& final_state) {
  auto ts = mixture_of<TransactionSet>(
      final_state, [](const ExactAmp& a) { return conj(a); },
      [](const ExactAmp& a) { return norm_sqr(a); });
  ExactReal total(0);
  for (const auto& t : ts.transactions) total = total + t.weight;
  if (!(total == ExactReal(1)))
    throw std::invalid_argument("final-state weights do not sum to 1");
  return ts;
}

FloatTransactionSet build_mixture(const FloatState& final_state) {
  auto ts = mixture_of<FloatTransactionSet>(
      final_state, [](const std::complex<double>& a) { return std::conj(a); },
      [](const std::complex<double>& a) { return std::norm(a); });
  double total = 0.0;
  for (const auto& t : ts.transactions) total += t.weight;
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("final-state weights do not sum to 1");
  return ts;
}

const BasisLabel& actualize(const TransactionSet& ts, double draw) {
  if (!(draw >= 0.0) || draw >= 1.0) throw std::invalid_argument("draw outside [0,1)");
  if (ts.transactions.empty()) throw std::invalid_argument("empty transaction set");
  ExactReal d(rational_from_double(draw));
  ExactReal cum(0);
  for (const auto& t : ts.transactions) {
    cum = cum + t.weight;
    if (d < cum) return t.outcome;
  }
  return ts.transactions.back().outcome;  // unreachable: weights sum to 1 > draw
}

namespace {

template <class Set, class MakeThresholds>
TrialReport run_impl(const Set& ts, std::uint64_t n, std::uint64_t seed,
                     std::optional<Kernel> kernel, MakeThresholds make) {
  if (n < 1) throw std::invalid_argument("need at least one trial");
  Kernel k = kernel.value_or(best_kernel());
  ThresholdTable table = make(ts);
  TrialReport tr;
  tr.n_trials = n;
  tr.seed = seed;
  tr.rng = kRngId;
  tr.kernel = kernel_name(k);
  tr.counts.assign(ts.transactions.size(), 0);
  for (const auto& t : ts.transactions) tr.labels.push_back(t.label);
  count_trials(k, table, seed, 0, n, tr.counts);
  return tr;
}

template <class Set>
std::vector<FrequencyRow> report_impl(const TrialReport& tr, const Set& ts) {
  if (tr.labels.size() != ts.transactions.size())
    throw std::invalid_argument("trial report does not match transaction set");
  std::vector<FrequencyRow> rows;
  rows.reserve(tr.labels.size());
  for (std::size_t i = 0; i < tr.labels.size(); ++i) {
    if (tr.labels[i] != ts.transactions[i].label)
      throw std::invalid_argument("trial report does not match transaction set");
    FrequencyRow row;
    row.label = tr.labels[i];
    if constexpr (std::is_same_v<Set, TransactionSet>)
      row.weight = ts.transactions[i].weight.to_double();
    else
      row.weight = ts.transactions[i].weight;
    row.count = tr.counts[i];
    row.freq = double(row.count) / double(tr.n_trials);
    double var = row.weight * (1.0 - row.weight);
    row.z = var > 0.0 ? (row.freq - row.weight) / std::sqrt(var / double(tr.n_trials)) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TrialReport run_trials(const TransactionSet& ts, std::uint64_t n, std::uint64_t seed,
                       std::optional<Kernel> kernel) {
  return run_impl(ts, n, seed, kernel, [](const TransactionSet& s) {
    std::vector<ExactReal> ws;
    for (const auto& t : s.transactions) ws.push_back(t.weight);
    return make_thresholds(ws);
  });
}

TrialReport run_trials(const FloatTransactionSet& ts, std::uint64_t n, std::uint64_t seed,
                       std::optional<Kernel> kernel) {
  return run_impl(ts, n, seed, kernel, [](const FloatTransactionSet& s) {
    std::vector<double> ws;
    for (const auto& t : s.transactions) ws.push_back(t.weight);
    return make_thresholds(ws);
  });
}

std::vector<FrequencyRow> frequency_report(const TrialReport& tr, const TransactionSet& ts) {
  return report_impl(tr, ts);
}

std::vector<FrequencyRow> frequency_report(const TrialReport& tr, const FloatTransactionSet& ts) {
  return report_impl(tr, ts);
}

}  // namespace tisim
