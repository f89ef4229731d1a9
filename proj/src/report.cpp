#include "tisim/report.hpp"

#include <cstdio>
#include <sstream>

namespace tisim {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void pad_columns(std::vector<std::vector<std::string>>& rows, std::string& out) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    out += line + "\n";
  }
}

}  // namespace

std::string render_table(const Report& r) {
  std::string out = "circuit: " + r.circuit + "   engine: " + r.engine;
  if (r.trials) out += "   trials: " + fmt_u64(*r.trials);
  if (r.seed) out += "   seed: " + fmt_u64(*r.seed);
  if (r.rng) out += "   rng: " + *r.rng;
  if (r.kernel) out += "   kernel: " + *r.kernel;
  out += "\n";

  bool with_counts = !r.outcomes.empty() && r.outcomes.front().count.has_value();
  std::vector<std::vector<std::string>> rows;
  rows.push_back(with_counts
                     ? std::vector<std::string>{"outcome", "weight_exact", "weight", "count",
                                                "freq", "z"}
                     : std::vector<std::string>{"outcome", "weight_exact", "weight"});
  for (const auto& o : r.outcomes) {
    std::vector<std::string> row{o.label, o.weight_exact, fmt("%.6f", o.weight)};
    if (with_counts) {
      row.push_back(o.count ? fmt_u64(*o.count) : "");
      row.push_back(o.freq ? fmt("%.6f", *o.freq) : "");
      row.push_back(o.z ? fmt("%+.3f", *o.z) : "");
    }
    rows.push_back(std::move(row));
  }
  pad_columns(rows, out);
  return out;
}

std::string render_csv(const Report& r) {
  std::string out = "label,weight_exact,weight,count,freq,z\n";
  for (const auto& o : r.outcomes) {
    out += csv_quote(o.label) + "," + csv_quote(o.weight_exact) + "," + fmt("%.17g", o.weight);
    out += ",";
    if (o.count) out += fmt_u64(*o.count);
    out += ",";
    if (o.freq) out += fmt("%.17g", *o.freq);
    out += ",";
    if (o.z) out += fmt("%.17g", *o.z);
    out += "\n";
  }
  return out;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["circuit"] = r.circuit;
  j["engine"] = r.engine;
  if (r.seed) j["seed"] = *r.seed;
  if (r.trials) j["trials"] = *r.trials;
  if (r.rng) j["rng"] = *r.rng;
  if (r.kernel) j["kernel"] = *r.kernel;
  j["outcomes"] = nlohmann::json::array();
  for (const auto& o : r.outcomes) {
    nlohmann::json row;
    row["label"] = o.label;
    row["weight_exact"] = o.weight_exact;
    row["weight"] = o.weight;
    if (o.count) row["count"] = *o.count;
    if (o.freq) row["freq"] = *o.freq;
    if (o.z) row["z"] = *o.z;
    j["outcomes"].push_back(std::move(row));
  }
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.circuit = j.at("circuit").get<std::string>();
  r.engine = j.at("engine").get<std::string>();
  if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("trials")) r.trials = j["trials"].get<std::uint64_t>();
  if (j.contains("rng")) r.rng = j["rng"].get<std::string>();
  if (j.contains("kernel")) r.kernel = j["kernel"].get<std::string>();
  for (const auto& row : j.at("outcomes")) {
    OutcomeRow o;
    o.label = row.at("label").get<std::string>();
    o.weight_exact = row.at("weight_exact").get<std::string>();
    o.weight = row.at("weight").get<double>();
    if (row.contains("count")) o.count = row["count"].get<std::uint64_t>();
    if (row.contains("freq")) o.freq = row["freq"].get<double>();
    if (row.contains("z")) o.z = row["z"].get<double>();
    r.outcomes.push_back(std::move(o));
  }
  return r;
}

}  // namespace tisim
