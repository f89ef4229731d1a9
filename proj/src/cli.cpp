#include "tisim/cli.hpp"

#include "tisim/propagate.hpp"
#include "tisim/report.hpp"
#include "tisim/transact.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace tisim {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CircuitGraph load_unvalidated(const RunConfig& cfg) {
  CircuitGraph g;
  if (!cfg.builtin_name.empty()) {
    g = builtin(cfg.builtin_name);
  } else {
    std::ifstream in(cfg.file);
    if (!in) throw std::ios_base::failure("cannot read circuit file '" + cfg.file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    g = parse(buf.str());
    g.name = cfg.file;
  }
  if (cfg.p_ann) {
    if (*cfg.p_ann < 0 || *cfg.p_ann > 1)
      throw std::invalid_argument("p_ann override outside [0,1]");
    for (auto& c : g.components)
      if (auto* ir = std::get_if<InteractionC>(&c)) ir->p_ann = *cfg.p_ann;
  }
  return g;
}

int guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json")
    out << to_json(r).dump(2) << "\n";
  else if (format == "csv")
    out << render_csv(r);
  else
    out << render_table(r);
}

Report exact_report(const CircuitGraph& g, const RunConfig& cfg) {
  Report r;
  r.circuit = g.name;
  r.engine = cfg.engine;
  if (cfg.engine == "float") {
    for (const auto& t : build_mixture(propagate_float(g)).transactions)
      r.outcomes.push_back({t.label, fmt17(t.weight), t.weight, {}, {}, {}});
  } else {
    for (const auto& t : build_mixture(propagate(g)).transactions)
      r.outcomes.push_back({t.label, t.weight.str(), t.weight.to_double(), {}, {}, {}});
  }
  return r;
}

template <class Set>
Report run_report(const Set& ts, const CircuitGraph& g, const RunConfig& cfg) {
  TrialReport tr = run_trials(ts, cfg.trials, cfg.seed);
  auto rows = frequency_report(tr, ts);
  Report r;
  r.circuit = g.name;
  r.engine = cfg.engine;
  r.seed = cfg.seed;
  r.trials = cfg.trials;
  r.rng = tr.rng;
  r.kernel = tr.kernel;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string exact_text;
    if constexpr (std::is_same_v<Set, TransactionSet>)
      exact_text = ts.transactions[i].weight.str();
    else
      exact_text = fmt17(ts.transactions[i].weight);
    r.outcomes.push_back(
        {rows[i].label, exact_text, rows[i].weight, rows[i].count, rows[i].freq, rows[i].z});
  }
  return r;
}

void pad_table(const std::vector<std::vector<std::string>>& rows, std::ostream& out) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      out << row[i];
      if (i + 1 < row.size()) out << std::string(width[i] - row[i].size(), ' ');
    }
    out << "\n";
  }
}

void indent_lines(const std::string& text, std::ostream& out) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out << "  " << line << "\n";
}

}  // namespace

CircuitGraph load_circuit(const RunConfig& cfg) {
  CircuitGraph g = load_unvalidated(cfg);
  auto violations = validate(g);
  if (!violations.empty()) {
    std::string msg = "circuit '" + g.name + "' failed validation:";
    for (const auto& v : violations) msg += "\n  " + v.code + " " + v.subject + ": " + v.message;
    throw std::invalid_argument(msg);
  }
  return g;
}

int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    CircuitGraph g = load_circuit(cfg);
    emit(exact_report(g, cfg), cfg.format, out);
    return 0;
  });
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    CircuitGraph g = load_circuit(cfg);
    Report r;
    if (cfg.engine == "float")
      r = run_report(build_mixture(propagate_float(g)), g, cfg);
    else
      r = run_report(build_mixture(propagate(g)), g, cfg);
    emit(r, cfg.format, out);
    return 0;
  });
}

int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    CircuitGraph g = load_circuit(cfg);
    const bool exact = cfg.engine != "float";

    struct TraceRow {
      std::string label, ow, cw, weight_exact;
      double weight;
    };
    std::vector<TraceRow> rows;
    if (exact) {
      for (const auto& t : build_mixture(propagate(g)).transactions)
        rows.push_back(
            {t.label, t.ow_amp.str(), t.cw_amp.str(), t.weight.str(), t.weight.to_double()});
    } else {
      for (const auto& t : build_mixture(propagate_float(g)).transactions)
        rows.push_back({t.label, amp_decimal_str(t.ow_amp), amp_decimal_str(t.cw_amp),
                        fmt17(t.weight), t.weight});
    }

    if (cfg.format == "json") {
      nlohmann::json j;
      j["circuit"] = g.name;
      j["engine"] = cfg.engine;
      j["cuts"] = nlohmann::json::object();
      for (const auto& cut : named_cuts(g)) {
        auto& arr = j["cuts"][cut] = nlohmann::json::array();
        if (exact) {
          State s = state_at_cut(g, cut);
          for (const auto& [label, amp] : s.terms())
            arr.push_back({{"term", label.str()}, {"amp", amp.str()}});
        } else {
          FloatState s = state_at_cut_float(g, cut);
          for (const auto& [label, amp] : s.terms())
            arr.push_back({{"term", label.str()}, {"amp", amp_decimal_str(amp)}});
        }
      }
      j["transactions"] = nlohmann::json::array();
      for (const auto& r : rows)
        j["transactions"].push_back({{"label", r.label},
                                     {"ow", r.ow},
                                     {"cw", r.cw},
                                     {"weight_exact", r.weight_exact},
                                     {"weight", r.weight}});
      out << j.dump(2) << "\n";
      return 0;
    }

    if (cfg.format == "csv") {
      out << "label,ow,cw,weight_exact,weight\n";
      for (const auto& r : rows) {
        std::string label = r.label;
        if (label.find(',') != std::string::npos) label = "\"" + label + "\"";
        out << label << "," << r.ow << "," << r.cw << "," << r.weight_exact << ","
            << fmt17(r.weight) << "\n";
      }
      return 0;
    }

    out << "circuit: " << g.name << "   engine: " << cfg.engine << "\n";
    for (const auto& cut : named_cuts(g)) {
      out << "\ncut " << cut << ":\n";
      indent_lines(exact ? state_at_cut(g, cut).str() : state_at_cut_float(g, cut).str(), out);
    }
    out << "\n";
    std::vector<std::vector<std::string>> table{{"outcome", "ow", "cw", "weight_exact", "weight"}};
    for (const auto& r : rows) {
      char wbuf[32];
      std::snprintf(wbuf, sizeof wbuf, "%.6f", r.weight);
      table.push_back({r.label, r.ow, r.cw, r.weight_exact, wbuf});
    }
    pad_table(table, out);
    return 0;
  });
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    CircuitGraph g = load_unvalidated(cfg);
    auto violations = validate(g);
    if (violations.empty()) {
      out << "OK\n";
      return 0;
    }
    for (const auto& v : violations) out << v.code << " " << v.subject << ": " << v.message << "\n";
    return 2;
  });
}

}  // namespace tisim
