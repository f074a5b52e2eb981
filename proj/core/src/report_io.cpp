#include "nlsg/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace nlsg {

using nlohmann::json;

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fmt(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_json(const TopologyReport& r, int indent) {
  json j;
  j["num_halflines"] = r.num_halflines;
  j["terminal_edges"] = r.terminal_edges;
  j["satisfies_H"] = r.satisfies_H;
  j["h_violation_witness"] = r.h_violation_witness ? json(*r.h_violation_witness) : json(nullptr);
  j["case_label"] = std::string(to_string(r.case_label));
  j["is_bubble_tower"] = r.is_bubble_tower;
  j["is_line"] = r.is_line;
  return j.dump(indent);
}

std::string to_json(const GroundStateResult& r, double p, double mu, int indent) {
  json j;
  j["p"] = p;
  j["mu"] = mu;
  j["energy"] = number(r.energy);
  j["mass"] = number(r.mass);
  j["omega"] = number(r.omega);
  j["grad_residual"] = number(r.grad_residual);
  j["kirchhoff_max_residual"] = number(r.kirchhoff_max_residual);
  j["iterations"] = r.iterations;
  j["status"] = std::string(to_string(r.status));
  j["escape_fraction"] = number(r.escape_fraction);
  j["mass_escaped"] = r.mass_escaped;
  j["origin"] = r.origin;
  j["level_pinching"] =
      (p > 2.0 && p < 6.0 && r.status == Status::Converged) ? json(level_pinching_check(r, p, mu)) : json(nullptr);
  json trace = json::array();
  for (const auto& t : r.trace)
    trace.push_back({{"strategy", std::string(to_string(t.strategy))},
                     {"restart", t.restart},
                     {"anchor", t.anchor},
                     {"energy", number(t.energy)},
                     {"status", std::string(to_string(t.status))},
                     {"iterations", t.iterations}});
  j["trace"] = trace;
  return j.dump(indent);
}

std::string to_json(const CriticalReport& r, int indent) {
  json j;
  j["K_estimate"] = number(r.K_estimate);
  j["mu_G_estimate"] = number(r.mu_G_estimate);
  j["case_label"] = std::string(to_string(r.case_label));
  j["predicted_mu_G"] = std::string(to_string(r.predicted_mu_G));
  j["predicted_existence"] = r.predicted_existence;
  j["predicted_minus_infinity_below_line_mass"] = r.predicted_minus_infinity_below_line_mass;
  j["truncation_length"] = r.truncation_length;
  j["h"] = r.h;
  return j.dump(indent);
}

std::string to_json(const Competitor& c, int indent) {
  json j;
  j["shape"] = c.shape;
  j["discrete_energy"] = number(c.discrete_energy);
  j["continuum_energy"] = number(c.continuum_energy);
  j["continuum_mass"] = number(c.continuum_mass);
  j["soliton_energy"] = number(c.soliton_energy);
  j["below_soliton_level"] = c.continuum_energy < c.soliton_energy;
  return j.dump(indent);
}

std::string to_json(const PhaseTransition& t, int indent) {
  json j;
  j["ell_star"] = t.ell_star;
  j["lo"] = t.lo;
  j["hi"] = t.hi;
  j["sign_changes"] = t.sign_changes;
  json grid = json::array();
  for (const auto& r : t.grid)
    grid.push_back({{"param", r.param}, {"energy", number(r.energy)}, {"status", r.status}});
  j["grid"] = grid;
  json bis = json::array();
  for (const auto& [ell, f] : t.bisection) bis.push_back({{"ell", ell}, {"f", f}});
  j["bisection"] = bis;
  return j.dump(indent);
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "param,energy,omega,status,iterations\n";
  for (const auto& r : rows)
    out << fmt(r.param) << ',' << fmt(r.energy) << ',' << fmt(r.omega) << ',' << r.status << ',' << r.iterations
        << '\n';
}

void write_profile_csv(const std::vector<ProfileRow>& rows, std::ostream& out) {
  out << "mu,energy,status,regime,iterations,energy_half_h\n";
  for (const auto& r : rows)
    out << fmt(r.mu) << ',' << fmt(r.energy) << ',' << to_string(r.status) << ',' << to_string(r.regime) << ','
        << r.iterations << ',' << (r.energy_half_h ? fmt(*r.energy_half_h) : std::string()) << '\n';
}

}  // namespace nlsg
