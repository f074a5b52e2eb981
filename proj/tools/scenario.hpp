#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlsg/graph.hpp"
#include "nlsg/minimize.hpp"

namespace nlsg::cli {

/// One entry of a scenario file.
struct Scenario {
  std::string name;
  std::string description;
  /// "solve" (default) or "profile6".
  std::string kind = "solve";
  MetricGraph graph;
  double p = 4.0;
  double mu = 1.0;
  SolverConfig config;
  nlohmann::json expected = nlohmann::json::object();
};

/// Applies the keys of a "solver" object onto cfg. Unknown keys throw ParseError.
void apply_solver_overrides(const nlohmann::json& j, SolverConfig& cfg);

/// Graph reference: inline object, "corpus:<name>", or a path relative to base_dir.
MetricGraph resolve_graph(const nlohmann::json& ref, const std::filesystem::path& base_dir);

std::vector<Scenario> load_scenarios(const std::filesystem::path& file, const SolverConfig& defaults);

struct ScenarioOutcome {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
  nlohmann::json report;
};

/// Runs one scenario, writes <out>/<name>.json and <out>/<name>.csv.
ScenarioOutcome run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

/// Checks every key of `expected` against `report`. Numeric ranges are {"min": a, "max": b}.
std::vector<std::string> check_expected(const nlohmann::json& expected, const nlohmann::json& report);

}  // namespace nlsg::cli
