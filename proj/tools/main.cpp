#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlsg/closed_forms.hpp"
#include "nlsg/corpus.hpp"
#include "nlsg/critical.hpp"
#include "nlsg/error.hpp"
#include "nlsg/graph_io.hpp"
#include "nlsg/minimize.hpp"
#include "nlsg/rearrange.hpp"
#include "nlsg/report_io.hpp"
#include "nlsg/surgery.hpp"
#include "nlsg/topology.hpp"
#include "scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlsg;

namespace {

constexpr int kExitAssertion = 2;
constexpr int kExitSolver = 3;
constexpr int kExitUsage = 4;

struct Common {
  std::string graph;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<double> L, h, dt, tol_energy, tol_residual;
  std::optional<int> max_iter, restarts;
  std::vector<std::string> strategies;

  SolverConfig config() const {
    SolverConfig c;
    c.seed = seed;
    if (L) c.truncation_length = *L;
    if (h) c.h_target = *h;
    if (dt) c.dt = *dt;
    if (tol_energy) c.tol_energy = *tol_energy;
    if (tol_residual) c.tol_residual = *tol_residual;
    if (max_iter) c.max_iterations = *max_iter;
    if (restarts) c.restarts = *restarts;
    if (!strategies.empty()) {
      c.init_strategies.clear();
      for (const auto& s : strategies) c.init_strategies.push_back(init_strategy_from_string(s));
    }
    c.validate();
    return c;
  }

  MetricGraph load_graph() const {
    if (graph.empty()) fail(Errc::Usage, "--graph is required");
    return cli::resolve_graph(json(graph), fs::current_path());
  }

  /// Writes text to <out>/<file> when --out is set, and to stdout otherwise.
  void emit(const std::string& file, const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    fs::create_directories(out);
    std::ofstream f(fs::path(out) / file);
    if (!f) fail(Errc::IoError, "cannot write " + (fs::path(out) / file).string());
    f << text;
  }
};

void add_common(CLI::App* cmd, Common& c, bool needs_graph) {
  auto* g = cmd->add_option("--graph", c.graph, "Graph JSON file or corpus:<name>");
  if (needs_graph) g->required();
  cmd->add_option("--out", c.out, "Output directory (stdout when omitted)");
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--truncation-length", c.L, "Halfline truncation length");
  cmd->add_option("--h-target", c.h, "Target mesh spacing");
  cmd->add_option("--dt", c.dt, "Initial flow step");
  cmd->add_option("--tol-energy", c.tol_energy, "Relative energy tolerance");
  cmd->add_option("--tol-residual", c.tol_residual, "Stationarity residual tolerance");
  cmd->add_option("--max-iter", c.max_iter, "Iteration cap per run");
  cmd->add_option("--restarts", c.restarts, "Restarts per strategy");
  cmd->add_option("--init", c.strategies, "Initial strategies (VERTEX_BUMP HALFLINE_SOLITON EDGE_UNIFORM RANDOM)");
}

std::string csv_of(const GraphFunction& u) {
  std::ostringstream s;
  write_csv(u, s);
  return s.str();
}

std::string csv_of(const PiecewiseLinear& f) {
  std::string s = "x,value\n";
  char buf[64];
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.x[i], f.y[i]);
    s += buf;
  }
  return s;
}

GraphFamily family_by_name(const std::string& name, double ell) {
  if (name == "g_ell") return [](double t) { return corpus::g_ell(t); };
  if (name == "pendant_line") return [](double t) { return corpus::pendant_line(t); };
  if (name == "tadpole") return [](double t) { return corpus::tadpole(t); };
  if (name == "edge") return [](double t) { return corpus::edge_with_halflines(t); };
  if (name == "signpost_stem") return [](double t) { return corpus::signpost(2.0 * M_PI, t); };
  if (name == "n_fork")
    return [ell](double t) { return corpus::n_fork(static_cast<int>(std::lround(t)), ell); };
  fail(Errc::Usage, "unknown family '" + name + "'");
}

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream f(file);
  if (!f) fail(Errc::IoError, "cannot write " + file.string());
  f << text;
}

double to_number(const std::string& s) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) fail(Errc::Usage, "not a number: '" + s + "'");
  return x;
}

std::vector<double> parse_masses(const std::vector<std::string>& args) {
  std::vector<double> out;
  for (const auto& a : args) {
    const auto c1 = a.find(':');
    if (c1 == std::string::npos) {
      out.push_back(to_number(a));
      continue;
    }
    const auto c2 = a.find(':', c1 + 1);
    if (c2 == std::string::npos) fail(Errc::Usage, "mass range must be a:b:n");
    const double lo = to_number(a.substr(0, c1)), hi = to_number(a.substr(c1 + 1, c2 - c1 - 1));
    const int n = static_cast<int>(to_number(a.substr(c2 + 1)));
    if (n < 1) fail(Errc::Usage, "mass range needs n >= 1");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }
  return out;
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::AssertionFailed: return kExitAssertion;
    case Errc::NoConvergedRun:
    case Errc::SolverError:
    case Errc::NoSignChange: return kExitSolver;
    default: return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states of the focusing NLS energy on noncompact metric graphs"};
  app.require_subcommand(1);

  Common common;
  double p = 4.0, mu = 1.0;

  auto* analyze = app.add_subcommand("analyze", "Topology report");
  add_common(analyze, common, true);

  auto* solve = app.add_subcommand("solve", "Mass-constrained ground state");
  add_common(solve, common, true);
  solve->add_option("--p", p, "Nonlinearity exponent in (2, 6]");
  solve->add_option("--mu,--mass", mu, "Mass");
  std::string report_file;
  solve->add_option("--report", report_file, "Report JSON path");

  std::string family;
  std::vector<double> values;
  double ell = 0.3;
  std::optional<std::vector<double>> bracket;
  int grid_points = 10;
  double width = 1e-2;
  auto* sweep_cmd = app.add_subcommand("sweep", "Energy along a graph family, optional phase bisection");
  add_common(sweep_cmd, common, false);
  sweep_cmd->add_option("--family", family, "g_ell, pendant_line, tadpole, edge, signpost_stem or n_fork")->required();
  sweep_cmd->add_option("--values", values, "Parameter values");
  sweep_cmd->add_option("--ell", ell, "Edge length for n_fork");
  sweep_cmd->add_option("--bisect", bracket, "Bracket lo hi for the phase transition")->expected(2);
  sweep_cmd->add_option("--grid-points", grid_points, "Grid points of the bisection sweep");
  sweep_cmd->add_option("--width", width, "Final bracket width");
  sweep_cmd->add_option("--p", p, "Nonlinearity exponent");
  sweep_cmd->add_option("--mu", mu, "Mass");

  auto* gn = app.add_subcommand("gn", "Gagliardo-Nirenberg constant estimate and critical-mass prediction");
  add_common(gn, common, true);

  std::vector<std::string> mass_args;
  std::vector<double> fractions;
  auto* profile6 = app.add_subcommand("profile6", "Ground-state level at p = 6 as a function of the mass");
  add_common(profile6, common, true);
  profile6->add_option("--masses", mass_args, "Masses, or a:b:n for n evenly spaced values");
  profile6->add_option("--fractions", fractions, "Masses as multiples of the line critical mass");

  std::string input;
  auto* rearrange = app.add_subcommand("rearrange", "Decreasing and symmetric rearrangements of a sampled function");
  add_common(rearrange, common, true);
  rearrange->add_option("--input", input, "CSV with edge_id,arc_coordinate,value")->required();

  std::string shape;
  auto* competitor = app.add_subcommand("competitor", "Soliton cut-and-paste construction");
  add_common(competitor, common, false);
  competitor->add_option("--shape", shape, "pendant, signpost, tadpole, fork3 or bubbletower")->required();
  competitor->add_option("--p", p, "Nonlinearity exponent");
  competitor->add_option("--mu", mu, "Mass");

  auto* reference = app.add_subcommand("reference", "Closed-form soliton values and critical masses");
  reference->add_option("--p", p, "Nonlinearity exponent");
  reference->add_option("--mu", mu, "Mass");
  add_common(reference, common, false);

  std::string scenario_file;
  auto* scenario = app.add_subcommand("scenario", "Scenario files");
  scenario->require_subcommand(1);
  auto* scenario_run = scenario->add_subcommand("run", "Run every scenario of a file");
  scenario_run->add_option("file", scenario_file, "Scenario JSON")->required();
  add_common(scenario_run, common, false);

  auto* corpus_cmd = app.add_subcommand("corpus", "Shipped graph corpus");
  corpus_cmd->require_subcommand(1);
  auto* corpus_export = corpus_cmd->add_subcommand("export", "Write every corpus graph as JSON");
  corpus_export->add_option("--out", common.out, "Output directory")->required();
  auto* corpus_list = corpus_cmd->add_subcommand("list", "Names and expected classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR USAGE: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      common.config();
      common.emit("topology.json", to_json(classify_case(common.load_graph())) + "\n");
    } else if (solve->parsed()) {
      const auto g = common.load_graph();
      const auto r = ground_state(g, p, mu, common.config());
      auto report = json::parse(to_json(r, p, mu));
      report["topology"] = json::parse(to_json(classify_case(g)));
      const auto text = report.dump(2) + "\n";
      // --out may name the CSV file itself
      if (fs::path(common.out).extension() == ".csv") {
        write_text(common.out, csv_of(r.u));
        if (report_file.empty()) std::cout << text;
      } else {
        if (report_file.empty()) common.emit("result.json", text);
        if (!common.out.empty()) common.emit("u.csv", csv_of(r.u));
      }
      if (!report_file.empty()) write_text(report_file, text);
    } else if (sweep_cmd->parsed()) {
      const auto fam = family_by_name(family, ell);
      const auto cfg = common.config();
      if (bracket) {
        const auto t = find_phase_transition(fam, p, mu, (*bracket)[0], (*bracket)[1], cfg, grid_points, width);
        common.emit("phase.json", to_json(t) + "\n");
        std::ostringstream s;
        write_sweep_csv(t.grid, s);
        if (!common.out.empty()) common.emit("sweep.csv", s.str());
      } else {
        if (values.empty()) fail(Errc::Usage, "sweep needs --values or --bisect");
        std::ostringstream s;
        write_sweep_csv(sweep(fam, p, mu, values, cfg), s);
        common.emit("sweep.csv", s.str());
      }
    } else if (gn->parsed()) {
      common.emit("critical.json", to_json(critical_report(common.load_graph(), common.config())) + "\n");
    } else if (profile6->parsed()) {
      auto masses = parse_masses(mass_args);
      for (double f : fractions) masses.push_back(f * critical_masses().mu_line);
      if (masses.empty()) fail(Errc::Usage, "profile6 needs --masses or --fractions");
      std::ostringstream s;
      write_profile_csv(energy_profile_p6(common.load_graph(), masses, common.config()), s);
      common.emit("profile6.csv", s.str());
    } else if (rearrange->parsed()) {
      const auto cfg = common.config();
      auto tg = std::make_shared<const TruncatedGraph>(common.load_graph(), cfg.truncation_length);
      std::ifstream in(input);
      if (!in) fail(Errc::IoNotFound, "cannot open " + input);
      const auto u = read_csv(tg, in);
      const auto mono = monotone_rearrangement(u);
      json j{{"mass", mass(u)},
             {"mass_rearranged", mono.mass()},
             {"l4", lp_integral(u, 4.0)},
             {"l4_rearranged", mono.lp_integral(4.0)},
             {"l6", lp_integral(u, 6.0)},
             {"l6_rearranged", mono.lp_integral(6.0)},
             {"polya_szego_gap", polya_szego_gap(u)},
             {"polya_szego_gap_symmetric", polya_szego_gap_symmetric(u)},
             {"min_preimage_count", preimage_count(u).min_count()}};
      common.emit("rearrangement.json", j.dump(2) + "\n");
      if (!common.out.empty()) {
        common.emit("monotone.csv", csv_of(mono));
        common.emit("symmetric.csv", csv_of(symmetrize(mono)));
      }
    } else if (competitor->parsed()) {
      const auto cfg = common.config();
      const bool own = !common.graph.empty();
      const double two_pi = 2.0 * M_PI;
      Competitor c;
      if (shape == "pendant")
        c = pendant_competitor(own ? common.load_graph() : corpus::pendant_line(1.0), mu, p, cfg);
      else if (shape == "signpost")
        c = signpost_competitor(own ? common.load_graph() : corpus::signpost(two_pi, 1.0), mu, p, cfg);
      else if (shape == "tadpole")
        c = tadpole_competitor(own ? common.load_graph() : corpus::tadpole(two_pi), mu, p, cfg);
      else if (shape == "fork3" || shape == "fork")
        c = fork_competitor(own ? common.load_graph() : corpus::fork({1.0, 1.0, 1.0}), mu, p, cfg);
      else if (shape == "bubbletower" || shape == "tower")
        c = fold_on_bubble_tower(own ? common.load_graph() : corpus::bubble_tower({}, 3.0), mu, p, cfg);
      else
        fail(Errc::Usage, "unknown shape '" + shape + "'");
      common.emit("competitor.json", to_json(c) + "\n");
      if (!common.out.empty()) common.emit("competitor.csv", csv_of(c.u));
    } else if (reference->parsed()) {
      const auto s = soliton(p, mu);
      const auto cm = critical_masses();
      json j{{"p", p},
             {"mu", mu},
             {"soliton_energy", soliton_energy(p, mu)},
             {"halfsoliton_energy", halfsoliton_energy(p, mu)},
             {"omega", s.omega},
             {"amplitude", s.amplitude},
             {"width_rate", s.width_rate},
             {"mu_line", cm.mu_line},
             {"mu_halfline", cm.mu_halfline},
             {"K_line", gn_constant_line()},
             {"K_halfline", gn_constant_halfline()}};
      common.emit("reference.json", j.dump(2) + "\n");
    } else if (scenario_run->parsed()) {
      const fs::path out = common.out.empty() ? fs::path("scenario_out") : fs::path(common.out);
      const auto list = cli::load_scenarios(scenario_file, common.config());
      bool all = true;
      for (const auto& s : list) {
        const auto o = cli::run_scenario(s, out);
        std::cout << (o.passed ? "PASS " : "FAIL ") << o.name;
        for (const auto& f : o.failures) std::cout << " | " << f;
        std::cout << std::endl;
        all = all && o.passed;
      }
      if (!all) fail(Errc::AssertionFailed, "at least one scenario assertion failed");
    } else if (corpus_export->parsed()) {
      fs::create_directories(common.out);
      for (const auto& e : corpus::shipped()) write_graph_file(e.graph, fs::path(common.out) / (e.name + ".json"));
    } else if (corpus_list->parsed()) {
      for (const auto& e : corpus::shipped())
        std::cout << e.name << ' ' << e.expected_case << ' ' << e.description << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "ERROR " << code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "ERROR IO_ERROR: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
