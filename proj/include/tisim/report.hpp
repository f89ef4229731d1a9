#pragma once

// Outcome-report model and its three renderings: aligned text table,
// machine-precision CSV, and JSON (which round-trips through
// report_from_json for loss-free pipelines).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace tisim {

struct OutcomeRow {
  std::string label;
  std::string weight_exact;  // exact rational/ring text (decimal in float engine)
  double weight = 0.0;
  std::optional<std::uint64_t> count;
  std::optional<double> freq;
  std::optional<double> z;

  bool operator==(const OutcomeRow&) const = default;
};

struct Report {
  std::string circuit;
  std::string engine;  // "exact" | "float"
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> rng;
  std::optional<std::string> kernel;
  std::vector<OutcomeRow> outcomes;

  bool operator==(const Report&) const = default;
};

std::string render_table(const Report& r);
std::string render_csv(const Report& r);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

}  // namespace tisim
