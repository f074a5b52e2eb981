#include "scenario.hpp"

#include <fstream>
#include <set>

#include "nlsg/closed_forms.hpp"
#include "nlsg/corpus.hpp"
#include "nlsg/critical.hpp"
#include "nlsg/error.hpp"
#include "nlsg/graph_io.hpp"
#include "nlsg/report_io.hpp"
#include "nlsg/topology.hpp"

namespace nlsg::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

double num(const json& j, const char* key) {
  if (!j.is_number()) fail(Errc::ParseError, std::string("expected a number for ") + key);
  return j.get<double>();
}

json parse_file(const fs::path& file) {
  try {
    return json::parse(read_text_file(file));
  } catch (const json::exception& e) {
    fail(Errc::ParseError, file.string() + ": " + e.what());
  }
}

}  // namespace

void apply_solver_overrides(const json& j, SolverConfig& cfg) {
  if (!j.is_object()) fail(Errc::ParseError, "solver overrides must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "truncation_length") cfg.truncation_length = num(v, "truncation_length");
    else if (key == "h_target") cfg.h_target = num(v, "h_target");
    else if (key == "dt") cfg.dt = num(v, "dt");
    else if (key == "dt_max") cfg.dt_max = num(v, "dt_max");
    else if (key == "max_iterations") cfg.max_iterations = static_cast<int>(num(v, "max_iterations"));
    else if (key == "tol_energy") cfg.tol_energy = num(v, "tol_energy");
    else if (key == "tol_residual") cfg.tol_residual = num(v, "tol_residual");
    else if (key == "restarts") cfg.restarts = static_cast<int>(num(v, "restarts"));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(num(v, "seed"));
    else if (key == "blowup_energy_floor") cfg.blowup_energy_floor = num(v, "blowup_energy_floor");
    else if (key == "init_strategies") {
      if (!v.is_array()) fail(Errc::ParseError, "init_strategies must be an array");
      cfg.init_strategies.clear();
      for (const auto& s : v) cfg.init_strategies.push_back(init_strategy_from_string(s.get<std::string>()));
    } else {
      fail(Errc::ParseError, "unknown solver key '" + key + "'");
    }
  }
  cfg.validate();
}

MetricGraph resolve_graph(const json& ref, const fs::path& base_dir) {
  if (ref.is_object()) return parse_graph(ref.dump());
  if (!ref.is_string()) fail(Errc::ParseError, "graph must be an object or a string");
  const auto s = ref.get<std::string>();
  if (s.rfind("corpus:", 0) == 0) {
    const auto name = s.substr(7);
    for (auto& e : corpus::shipped())
      if (e.name == name) return e.graph;
    fail(Errc::IoNotFound, "no corpus graph named '" + name + "'");
  }
  fs::path p(s);
  if (p.is_relative()) p = base_dir / p;
  return read_graph_file(p);
}

std::vector<Scenario> load_scenarios(const fs::path& file, const SolverConfig& defaults) {
  const json root = parse_file(file);
  const json* list = &root;
  if (root.is_object()) {
    if (!root.contains("scenarios")) fail(Errc::ParseError, "scenario file needs a 'scenarios' array");
    list = &root.at("scenarios");
  }
  if (!list->is_array()) fail(Errc::ParseError, "'scenarios' must be an array");

  const auto base = file.parent_path();
  const auto cm = critical_masses();
  std::set<std::string> names;
  std::vector<Scenario> out;
  static const std::set<std::string> keys{"name", "description", "kind", "graph", "p", "mu",
                                          "mu_over_line_mass", "mu_over_halfline_mass", "solver",
                                          "expected"};
  for (const auto& j : *list) {
    if (!j.is_object()) fail(Errc::ParseError, "scenario entries must be objects");
    for (const auto& [k, _] : j.items())
      if (!keys.count(k)) fail(Errc::ParseError, "unknown scenario key '" + k + "'");
    Scenario s;
    s.name = j.at("name").get<std::string>();
    if (!names.insert(s.name).second) fail(Errc::DuplicateId, "duplicate scenario name '" + s.name + "'");
    s.description = j.value("description", "");
    s.kind = j.value("kind", "solve");
    if (s.kind != "solve" && s.kind != "profile6") fail(Errc::ParseError, "unknown scenario kind '" + s.kind + "'");
    if (!j.contains("graph")) fail(Errc::ParseError, "scenario '" + s.name + "' has no graph");
    s.graph = resolve_graph(j.at("graph"), base);
    s.p = s.kind == "profile6" ? 6.0 : j.value("p", 4.0);
    if (j.contains("mu")) s.mu = num(j.at("mu"), "mu");
    else if (j.contains("mu_over_line_mass")) s.mu = num(j.at("mu_over_line_mass"), "mu") * cm.mu_line;
    else if (j.contains("mu_over_halfline_mass")) s.mu = num(j.at("mu_over_halfline_mass"), "mu") * cm.mu_halfline;
    s.config = defaults;
    if (j.contains("solver")) apply_solver_overrides(j.at("solver"), s.config);
    if (j.contains("expected")) {
      s.expected = j.at("expected");
      if (!s.expected.is_object()) fail(Errc::ParseError, "'expected' must be an object");
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> check_expected(const json& expected, const json& report) {
  std::vector<std::string> failures;
  for (const auto& [key, want] : expected.items()) {
    if (!report.contains(key)) {
      failures.push_back(key + ": not a report field");
      continue;
    }
    const auto& got = report.at(key);
    if (want.is_object()) {
      if (!got.is_number()) {
        failures.push_back(key + ": not numeric (" + got.dump() + ")");
        continue;
      }
      const double x = got.get<double>();
      if (want.contains("min") && x < want.at("min").get<double>())
        failures.push_back(key + " = " + got.dump() + " below " + want.at("min").dump());
      if (want.contains("max") && x > want.at("max").get<double>())
        failures.push_back(key + " = " + got.dump() + " above " + want.at("max").dump());
    } else if (got != want) {
      failures.push_back(key + " = " + got.dump() + ", expected " + want.dump());
    }
  }
  return failures;
}

ScenarioOutcome run_scenario(const Scenario& s, const fs::path& out_dir) {
  ScenarioOutcome o;
  o.name = s.name;
  const auto topo = classify_case(s.graph);
  fs::create_directories(out_dir);
  std::ofstream csv(out_dir / (s.name + ".csv"));
  if (!csv) fail(Errc::IoError, "cannot write " + (out_dir / (s.name + ".csv")).string());

  if (s.kind == "profile6") {
    const auto rows = energy_profile_p6(s.graph, {s.mu}, s.config);
    const auto& r = rows.front();
    o.report = {{"mu", r.mu},
                {"energy", r.energy},
                {"status", std::string(to_string(r.status))},
                {"regime", std::string(to_string(r.regime))},
                {"iterations", r.iterations},
                {"energy_half_h", r.energy_half_h ? json(*r.energy_half_h) : json(nullptr)}};
    write_profile_csv(rows, csv);
  } else {
    const auto r = ground_state(s.graph, s.p, s.mu, s.config);
    o.report = json::parse(to_json(r, s.p, s.mu));
    o.report["soliton_energy"] = soliton_energy(s.p, s.mu);
    o.report["halfsoliton_energy"] = halfsoliton_energy(s.p, s.mu);
    write_csv(r.u, csv);
  }
  o.report["name"] = s.name;
  o.report["description"] = s.description;
  o.report["case_label"] = std::string(to_string(topo.case_label));
  o.report["satisfies_H"] = topo.satisfies_H;
  o.report["truncation_length"] = s.config.truncation_length;
  o.report["h_target"] = s.config.h_target;

  o.failures = check_expected(s.expected, o.report);
  o.passed = o.failures.empty();
  o.report["expected"] = s.expected;
  o.report["passed"] = o.passed;
  std::ofstream js(out_dir / (s.name + ".json"));
  if (!js) fail(Errc::IoError, "cannot write " + (out_dir / (s.name + ".json")).string());
  js << o.report.dump(2) << '\n';
  return o;
}

}  // namespace nlsg::cli
