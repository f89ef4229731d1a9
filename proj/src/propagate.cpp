#include "tisim/propagate.hpp"

#include <cmath>
#include <queue>

namespace tisim {

Schedule make_schedule(const CircuitGraph& g) {
  const std::size_t n = g.components.size();
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> adj(n);
  for (const auto& [from, to] : wire(g).edges) {
    if (from == to) continue;
    adj[from].push_back(to);
    ++indegree[to];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(static_cast<int>(i));

  Schedule sched;
  sched.order.reserve(n);
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    sched.order.push_back(c);
    for (int next : adj[c])
      if (--indegree[next] == 0) ready.push(next);
  }
  if (sched.order.size() != n)
    throw std::logic_error("cycle detected while scheduling '" + g.name + "'");

  std::size_t last_source = 0;
  for (std::size_t pos = 0; pos < sched.order.size(); ++pos) {
    const Component& c = g.components[sched.order[pos]];
    sched.cuts[component_name(c)] = pos + 1;
    if (std::holds_alternative<SourceC>(c)) last_source = pos + 1;
  }
  sched.cuts["sources"] = last_source;
  for (const auto& [alias, target] : g.cut_aliases) {
    auto it = sched.cuts.find(target);
    if (it != sched.cuts.end()) sched.cuts[alias] = it->second;
  }
  return sched;
}

namespace {

void audit_norm(const State& s, const std::string& after) {
  if (!(s.total_weight() == ExactReal(1)))
    throw std::logic_error("norm not conserved after '" + after + "'");
}

void audit_norm(const FloatState& s, const std::string& after) {
  if (std::abs(s.total_weight() - 1.0) > 1e-9)
    throw std::logic_error("norm not conserved after '" + after + "'");
}

template <class Amp>
BasicState<Amp> walk(const CircuitGraph& g, std::size_t n_steps) {
  Schedule sched = make_schedule(g);
  detail::Walker<Amp> walker(g);
  BasicState<Amp> s = walker.initial();
  for (std::size_t pos = 0; pos < n_steps && pos < sched.order.size(); ++pos) {
    const Component& c = g.components[sched.order[pos]];
    s = walker.apply(c, s);
    audit_norm(s, component_name(c));
  }
  return s;
}

}  // namespace

State propagate(const CircuitGraph& g) {
  State s = walk<ExactAmp>(g, g.components.size());
  for (const auto& [label, amp] : s.terms())
    if (!label.fully_absorbed())
      throw std::logic_error("offer wave not fully absorbed in '" + g.name + "'");
  return s;
}

FloatState propagate_float(const CircuitGraph& g) {
  return walk<std::complex<double>>(g, g.components.size());
}

namespace {

std::size_t cut_position(const CircuitGraph& g, const std::string& cut) {
  Schedule sched = make_schedule(g);
  auto it = sched.cuts.find(cut);
  if (it == sched.cuts.end()) throw std::invalid_argument("unknown cut '" + cut + "'");
  return it->second;
}

}  // namespace

State state_at_cut(const CircuitGraph& g, const std::string& cut) {
  return walk<ExactAmp>(g, cut_position(g, cut));
}

FloatState state_at_cut_float(const CircuitGraph& g, const std::string& cut) {
  return walk<std::complex<double>>(g, cut_position(g, cut));
}

std::vector<std::pair<std::string, State>> step_states(const CircuitGraph& g) {
  Schedule sched = make_schedule(g);
  detail::Walker<ExactAmp> walker(g);
  State s = walker.initial();
  std::vector<std::pair<std::string, State>> out;
  out.reserve(sched.order.size());
  for (int idx : sched.order) {
    const Component& c = g.components[idx];
    s = walker.apply(c, s);
    out.emplace_back(component_name(c), s);
  }
  return out;
}

std::vector<std::string> named_cuts(const CircuitGraph& g) {
  std::vector<std::string> out{"sources"};
  for (const auto& [alias, target] : g.cut_aliases) out.push_back(alias);
  return out;
}

}  // namespace tisim
